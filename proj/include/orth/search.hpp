#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orth/frame.hpp"
#include "orth/lattice.hpp"
#include "orth/semantics.hpp"

namespace orth {

enum class FrameClass { Compatibility, Epistemic, Conditional };
const char* to_string(FrameClass c);
std::optional<FrameClass> frame_class_from_string(const std::string& s);

// Largest n enumerate_frames accepts per class.
int size_cap(FrameClass c);

// Reflexive symmetric relations on n points, one per isomorphism class, as
// compatibility masks. Representatives have non-increasing degrees and the
// largest edge code among such labelings; the list is in increasing code order.
std::vector<std::vector<Mask>> canonical_graphs(int n);
// Point permutations preserving compatibility (identity first).
std::vector<std::vector<int>> automorphisms(const std::vector<Mask>& compat);

// Compatibility: bare frames. Epistemic: total information functions passing
// check_epistemic, one per orbit of the graph's automorphism group.
// Conditional frames are produced inside qualified_collapse_hunt, not here.
std::vector<Frame> enumerate_frames(FrameClass c, int n);

struct SearchSpec {
  // Either a consecution or a principle schema.
  std::optional<Sequent> goal;
  std::optional<PrincipleSchema> schema;
  std::set<std::string> bool_atoms;
  FrameClass cls = FrameClass::Epistemic;
  int min_size = 1;
  int max_size = 5;
  std::uint64_t budget = 5000000;  // frames (and selection tables) examined
  int threads = 1;
};

struct SizeLog {
  int size = 0;
  std::uint64_t frames = 0;
};

struct SearchResult {
  enum class Status { Found, NoneUpToBound, BudgetExhausted } status = Status::NoneUpToBound;
  std::optional<Model> model;  // countermodel frame and valuation
  int point = -1;              // failing possibility
  std::vector<SizeLog> log;
  std::string note;
};
const char* to_string(SearchResult::Status s);

// First countermodel in canonical order (size, graph, information function).
// Every hit is re-verified with entails_on_frame / verify_principle before it
// is returned. Results do not depend on the thread count.
SearchResult find_countermodel(const SearchSpec& spec);

struct HuntSpec {
  std::set<std::string> principles;  // principle ids, numbers 16..29 or constraint names
  int min_size = 1;
  int max_size = 3;
  std::uint64_t budget = 2000000;  // complete selection tables examined
  int threads = 1;
};

// Conditional epistemic frames (Boolean family {empty, S}, every regular set a
// proposition) whose selection function satisfies the constraints paired with
// the chosen principles, searched for a point where
// psi & (psi -> <>(psi & phi)) holds and phi -> psi fails.
SearchResult qualified_collapse_hunt(const HuntSpec& spec);
// Constraint paired with a principle id, number or constraint name; nullopt
// when unpaired.
std::optional<FrameCondition> paired_condition(const std::string& principle);

// Ortholattices up to iso with at most max_elems elements, found as
// proposition lattices of compatibility frames on at most 6 points.
std::vector<Ortholattice> small_ortholattices(int max_elems);

}  // namespace orth
