#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orth/bits.hpp"
#include "orth/lattice.hpp"

namespace orth {

// Finite compatibility frame over at most 64 possibilities. Optional parts:
// an information function i (partial; -1 marks undefined), an accessibility
// relation R, the Boolean family, the proposition family and a selection
// function keyed by members of the proposition family.
class Frame {
 public:
  Frame() = default;
  explicit Frame(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  Mask all() const { return full(size()); }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;  // -1 when absent
  int add_point(const std::string& name);    // reflexive, no other edges

  bool compat(int x, int y) const { return has(compat_[x], y); }
  Mask compat_mask(int x) const { return compat_[x]; }
  void set_compat(int x, int y, bool on = true);

  bool has_i() const { return !i_.empty(); }
  int i(int x) const { return i_.empty() ? -1 : i_[x]; }
  void set_i(int x, int y);
  void clear_i() { i_.clear(); }

  bool has_R() const { return !R_.empty(); }
  Mask R(int x) const { return R_.empty() ? Mask{0} : R_[x]; }
  void set_R(int x, Mask succ);
  void clear_R() { R_.clear(); }

  bool has_bool_family() const { return has_bool_; }
  const std::vector<Mask>& bool_family() const { return bool_; }
  void set_bool_family(std::vector<Mask> fam);

  bool has_prop_family() const { return has_prop_; }
  // Declared family, or every regular set when none was declared.
  const std::vector<Mask>& prop_family() const;
  void set_prop_family(std::vector<Mask> fam);
  int prop_index(Mask A) const;  // -1 when A is not in the family

  bool has_selection() const { return has_sel_; }
  // -1 when undefined; throws ValidationError if A is not in the family.
  int c(int x, Mask A) const;
  void set_c(int x, Mask A, int y);
  void enable_selection();  // all entries undefined

  // Set named like "{x1,x2}".
  std::string set_name(Mask A) const;
  Mask parse_set(const std::vector<std::string>& names) const;

 private:
  std::vector<std::string> names_;
  std::vector<Mask> compat_;
  std::vector<int> i_;
  std::vector<Mask> R_;
  bool has_bool_ = false, has_prop_ = false, has_sel_ = false;
  std::vector<Mask> bool_;
  std::vector<Mask> prop_;
  mutable std::vector<Mask> all_regular_;  // cache when prop_ undeclared
  mutable bool all_regular_ready_ = false;
  mutable std::unordered_map<Mask, int> prop_pos_;
  std::vector<std::vector<int>> sel_;  // [prop index][x]
  void reindex_props() const;
};

// ------------------------------------------------------------- set algebra

bool is_regular(const Frame& F, Mask A);
Mask neg_set(const Frame& F, Mask A);
Mask join_set(const Frame& F, Mask A, Mask B);
bool refines(const Frame& F, int y, int x);  // y refines x
Mask down_set(const Frame& F, int x);
Mask worlds(const Frame& F);

// All regular sets, sorted by (cardinality, mask). Closure of the principal
// down-sets with the bounds under intersection and complement.
std::vector<Mask> regular_sets(const Frame& F);

// Boxes: through i when present, else through R; throws if neither.
Mask box_set(const Frame& F, Mask A);
Mask diamond_set(const Frame& F, Mask A);
Mask box_between(const Frame& F, Mask A);  // {x | every x' compatible with x is in A}
Mask arrow_set(const Frame& F, Mask A, Mask B);

// Relativized compatibility/refinement for the distinguished families.
bool bool_compat(const Frame& F, int y, int x);
bool bool_refines(const Frame& F, int y, int x);
bool prop_refines(const Frame& F, int y, int x);

struct PropLattice {
  Ortholattice lattice;
  std::vector<Mask> sets;  // element index -> set
  bool box_closed = true;  // false when i/R was present but the family is not closed under box
  int element_of(Mask A) const;
};

// Elements are the proposition family (all regular sets unless declared).
// Box is attached when the frame has i or R, arrow when it has a selection,
// and the Boolean block when it has a Boolean family.
PropLattice proposition_lattice(const Frame& F);

// Frame on the join-irreducibles, a compatible with b iff a is not below ~b.
Frame frame_from_lattice(const Ortholattice& L);

// ------------------------------------------------------------- conditions

enum class FrameCondition {
  IRegularity,
  DTotal,
  Factivity,
  Knowability,
  GroundingKey,
  CRegularity,
  Id,
  Center,
  Comp,
  MustCenter,
  MustComp,
  Update,
  MustImp,
  MustExp,
  Preserve,
  Flat,
  Cons,
  Combine,
  Switch,
  Split,
};

const char* to_string(FrameCondition c);
std::optional<FrameCondition> frame_condition_from_string(const std::string& s);
std::vector<FrameCondition> all_frame_conditions();
// Selection constraints in numbering order (16..29).
std::vector<FrameCondition> selection_conditions();
int condition_number(FrameCondition c);  // 16..29 for selection constraints, 0 otherwise

struct FrameWitness {
  std::vector<int> points;
  std::vector<Mask> sets;
  std::string what;
};

std::optional<FrameWitness> check_condition(const Frame& F, FrameCondition cond);
// A selection constraint restricted to one antecedent A: only c(., A) is
// consulted. Every selection constraint except Flat has this form.
std::optional<FrameWitness> check_condition_for(const Frame& F, FrameCondition cond, Mask antecedent);

// Everything a conditional epistemic frame needs: epistemic i conditions,
// grounding, proposition family closure, c-regularity.
std::optional<FrameWitness> check_epistemic(const Frame& F);
std::optional<FrameWitness> check_prop_closure(const Frame& F);

// ------------------------------------------------------------- constructions

// Componentwise compatibility and accessibility; point (x,y) is named "(x,y)".
// origin[k] = {index in F1, index in F2}.
struct ProductFrame {
  Frame frame;
  std::vector<std::pair<int, int>> origin;
};
ProductFrame product(const Frame& F1, const Frame& F2);

// Replaces R by an information function. props are extensions over F that are
// carried over (truth at a new point = truth at every successor); they are
// extended in place. Throws ValidationError when R is empty somewhere or the
// result fails xRy <=> y refines i(x).
Frame relational_to_functional(const Frame& F, std::vector<Mask>* props = nullptr);

}  // namespace orth
