#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orth/bits.hpp"
#include "orth/formula.hpp"

namespace orth {

// Finite ortholattice with optional box, Boolean block and arrow tables.
// Meets and joins are tabulated once at construction.
class Ortholattice {
 public:
  Ortholattice() = default;

  // Order given as generating pairs (a <= b); reflexive-transitive closure is taken.
  // Throws ValidationError unless the closure is a bounded lattice.
  static Ortholattice from_order(std::vector<std::string> names,
                                 const std::vector<std::pair<int, int>>& leq, std::vector<int> neg);

  // Sets ordered by inclusion. The family must be closed under intersection and
  // neg must be an order-reversing involution (joins are then De Morgan duals).
  static Ortholattice from_sets(std::vector<std::string> names, const std::vector<Mask>& sets,
                                std::vector<int> neg);

  int size() const { return n_; }
  const std::string& name(int a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;  // -1 when absent

  bool leq(int a, int b) const { return leq_[a * n_ + b]; }
  int meet(int a, int b) const { return meet_[a * n_ + b]; }
  int join(int a, int b) const { return join_[a * n_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int bottom() const { return bot_; }
  int top() const { return top_; }

  bool has_box() const { return !box_.empty(); }
  int box(int a) const;
  int dia(int a) const { return neg(box(neg(a))); }
  void set_box(std::vector<int> box);

  bool has_bool_block() const { return !block_.empty(); }
  const std::vector<int>& bool_block() const { return block_; }
  bool in_block(int a) const;
  void set_bool_block(std::vector<int> block);

  bool has_arrow() const { return !arrow_.empty(); }
  int arrow(int a, int b) const;
  void set_arrow(std::vector<int> table);  // row-major n*n

  const std::vector<int>& neg_table() const { return neg_; }
  const std::vector<int>& box_table() const { return box_; }
  const std::vector<int>& arrow_table() const { return arrow_; }

  // Same order and complement, optional tables dropped.
  Ortholattice plain() const;

  // Hasse diagram edges (a covered by b).
  std::vector<std::pair<int, int>> covers() const;

 private:
  void tabulate_from_leq();
  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<char> leq_;
  std::vector<int> meet_, join_, neg_, box_, arrow_, block_;
  std::vector<char> in_block_;
  int bot_ = 0, top_ = 0;
};

enum class LatticeProperty {
  Ortholattice,
  Distributive,
  Orthomodular,
  Pseudocomplement,
  Modal,
  D,
  T,
  Wittgenstein,
  Four,
  Five,
  B,
  BooleanBlockOK,
  ArrowNormal,
};

const char* to_string(LatticeProperty p);
std::optional<LatticeProperty> lattice_property_from_string(const std::string& s);
std::vector<LatticeProperty> all_lattice_properties();

// A failing tuple of elements plus a short description of the violated identity.
struct Witness {
  std::vector<int> elems;
  std::string what;
};

std::optional<Witness> check_lattice(const Ortholattice& L);
// Exhaustive in a fixed lexicographic order; the first failing tuple is returned.
// Throws ValidationError when the property needs a table the lattice lacks.
std::optional<Witness> check_property(const Ortholattice& L, LatticeProperty p);

using AlgValuation = std::map<std::string, int>;

int eval_alg(const Ortholattice& L, const AlgValuation& v, const Formula& f);
bool entails_alg(const Ortholattice& L, const AlgValuation& v, const Formula& f, const Formula& g);

std::vector<int> join_irreducibles(const Ortholattice& L);

// Bijection preserving order, complement, and box/arrow/Boolean block when present.
std::optional<std::vector<int>> iso_check(const Ortholattice& a, const Ortholattice& b);

// Closure of gens together with 0 and 1 under meet, join and complement.
// Element names carry over; box is kept when the subset is closed under it.
Ortholattice generated_subortholattice(const Ortholattice& L, const std::vector<int>& gens);

}  // namespace orth
