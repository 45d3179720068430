#include "orth/frame.hpp"

#include <algorithm>
#include <unordered_set>

#include "orth/error.hpp"

namespace orth {

Frame::Frame(std::vector<std::string> names) {
  if (names.size() > static_cast<std::size_t>(kMaxPoints))
    throw ValidationError("frames are limited to 64 possibilities");
  names_ = std::move(names);
  compat_.resize(names_.size());
  for (int x = 0; x < size(); ++x) compat_[x] = bit(x);
  std::unordered_set<std::string> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw ValidationError("duplicate possibility name " + n);
}

int Frame::index(const std::string& name) const {
  for (int x = 0; x < size(); ++x)
    if (names_[x] == name) return x;
  return -1;
}

int Frame::add_point(const std::string& name) {
  if (size() >= kMaxPoints) throw ValidationError("frames are limited to 64 possibilities");
  if (index(name) >= 0) throw ValidationError("duplicate possibility name " + name);
  if (has_sel_) throw ValidationError("cannot add points after the selection function is set");
  names_.push_back(name);
  compat_.push_back(bit(size() - 1));
  if (!i_.empty()) i_.push_back(-1);
  if (!R_.empty()) R_.push_back(0);
  all_regular_ready_ = false;
  return size() - 1;
}

void Frame::set_compat(int x, int y, bool on) {
  if (x == y && !on) throw ValidationError("compatibility must be reflexive");
  if (on) {
    compat_[x] |= bit(y);
    compat_[y] |= bit(x);
  } else {
    compat_[x] &= ~bit(y);
    compat_[y] &= ~bit(x);
  }
  all_regular_ready_ = false;
}

void Frame::set_i(int x, int y) {
  if (i_.empty()) i_.assign(size(), -1);
  if (y < -1 || y >= size()) throw ValidationError("i value out of range");
  i_[x] = y;
}

void Frame::set_R(int x, Mask succ) {
  if (R_.empty()) R_.assign(size(), 0);
  if (!subset(succ, all())) throw ValidationError("accessibility successor out of range");
  R_[x] = succ;
}

void Frame::set_bool_family(std::vector<Mask> fam) {
  std::sort(fam.begin(), fam.end(), [](Mask a, Mask b) {
    return count(a) != count(b) ? count(a) < count(b) : a < b;
  });
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  bool_ = std::move(fam);
  has_bool_ = true;
}

void Frame::set_prop_family(std::vector<Mask> fam) {
  if (has_sel_) throw ValidationError("proposition family must be set before the selection function");
  std::sort(fam.begin(), fam.end(), [](Mask a, Mask b) {
    return count(a) != count(b) ? count(a) < count(b) : a < b;
  });
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  prop_ = std::move(fam);
  has_prop_ = true;
  prop_pos_.clear();
}

const std::vector<Mask>& Frame::prop_family() const {
  if (has_prop_) return prop_;
  if (!all_regular_ready_) {
    all_regular_ = regular_sets(*this);
    all_regular_ready_ = true;
    prop_pos_.clear();
  }
  return all_regular_;
}

void Frame::reindex_props() const {
  const auto& fam = prop_family();
  prop_pos_.clear();
  for (std::size_t k = 0; k < fam.size(); ++k) prop_pos_.emplace(fam[k], static_cast<int>(k));
}

int Frame::prop_index(Mask A) const {
  const auto& fam = prop_family();
  if (prop_pos_.size() != fam.size()) reindex_props();
  auto it = prop_pos_.find(A);
  return it == prop_pos_.end() ? -1 : it->second;
}

void Frame::enable_selection() {
  if (has_sel_) return;
  sel_.assign(prop_family().size(), std::vector<int>(size(), -1));
  has_sel_ = true;
}

int Frame::c(int x, Mask A) const {
  if (!has_sel_) throw ValidationError("frame has no selection function");
  int k = prop_index(A);
  if (k < 0) throw ValidationError("antecedent " + set_name(A) + " is not in the proposition family");
  return sel_[k][x];
}

void Frame::set_c(int x, Mask A, int y) {
  enable_selection();
  int k = prop_index(A);
  if (k < 0) throw ValidationError("antecedent " + set_name(A) + " is not in the proposition family");
  if (y < -1 || y >= size()) throw ValidationError("selection value out of range");
  sel_[k][x] = y;
}

std::string Frame::set_name(Mask A) const {
  std::string s = "{";
  bool first = true;
  each(A, [&](int x) {
    if (!first) s += ",";
    s += names_[x];
    first = false;
  });
  return s + "}";
}

Mask Frame::parse_set(const std::vector<std::string>& names) const {
  Mask m = 0;
  for (const auto& n : names) {
    int x = index(n);
    if (x < 0) throw ValidationError("unknown possibility " + n);
    m |= bit(x);
  }
  return m;
}

// ------------------------------------------------------------- set algebra

Mask neg_set(const Frame& F, Mask A) {
  Mask out = 0;
  for (int x = 0; x < F.size(); ++x)
    if ((F.compat_mask(x) & A) == 0) out |= bit(x);
  return out;
}

bool is_regular(const Frame& F, Mask A) { return neg_set(F, neg_set(F, A)) == A; }

Mask join_set(const Frame& F, Mask A, Mask B) { return neg_set(F, neg_set(F, A) & neg_set(F, B)); }

bool refines(const Frame& F, int y, int x) { return subset(F.compat_mask(y), F.compat_mask(x)); }

Mask down_set(const Frame& F, int x) {
  Mask out = 0;
  for (int y = 0; y < F.size(); ++y)
    if (refines(F, y, x)) out |= bit(y);
  return out;
}

Mask worlds(const Frame& F) {
  Mask out = 0;
  for (int w = 0; w < F.size(); ++w) {
    bool ok = true;
    each(F.compat_mask(w), [&](int x) { ok = ok && refines(F, w, x); });
    if (ok) out |= bit(w);
  }
  return out;
}

std::vector<Mask> regular_sets(const Frame& F) {
  std::unordered_set<Mask> seen;
  std::vector<Mask> items;
  auto add = [&](Mask m) {
    if (seen.insert(m).second) items.push_back(m);
  };
  add(0);
  add(F.all());
  for (int x = 0; x < F.size(); ++x) add(down_set(F, x));
  for (std::size_t k = 0; k < items.size(); ++k) {
    Mask a = items[k];
    add(neg_set(F, a));
    for (std::size_t j = 0; j < k; ++j) add(a & items[j]);
  }
  std::sort(items.begin(), items.end(), [](Mask a, Mask b) {
    return count(a) != count(b) ? count(a) < count(b) : a < b;
  });
  return items;
}

Mask box_set(const Frame& F, Mask A) {
  Mask out = 0;
  if (F.has_i()) {
    for (int x = 0; x < F.size(); ++x) {
      int ix = F.i(x);
      if (ix < 0 || has(A, ix)) out |= bit(x);
    }
    return out;
  }
  if (F.has_R()) {
    for (int x = 0; x < F.size(); ++x)
      if (subset(F.R(x), A)) out |= bit(x);
    return out;
  }
  throw ValidationError("box needs an information function or an accessibility relation");
}

Mask diamond_set(const Frame& F, Mask A) { return neg_set(F, box_set(F, neg_set(F, A))); }

Mask box_between(const Frame& F, Mask A) {
  Mask out = 0;
  for (int x = 0; x < F.size(); ++x)
    if (subset(F.compat_mask(x), A)) out |= bit(x);
  return out;
}

Mask arrow_set(const Frame& F, Mask A, Mask B) {
  Mask out = 0;
  for (int x = 0; x < F.size(); ++x) {
    int y = F.c(x, A);
    if (y < 0 || has(B, y)) out |= bit(x);
  }
  return out;
}

bool bool_compat(const Frame& F, int y, int x) {
  if (!F.has_bool_family()) return true;
  for (Mask A : F.bool_family())
    if (has(A, y) && has(neg_set(F, A), x)) return false;
  return true;
}

bool bool_refines(const Frame& F, int y, int x) {
  if (!F.has_bool_family()) return true;
  for (Mask A : F.bool_family())
    if (has(A, x) && !has(A, y)) return false;
  return true;
}

bool prop_refines(const Frame& F, int y, int x) {
  for (Mask A : F.prop_family())
    if (has(A, x) && !has(A, y)) return false;
  return true;
}

int PropLattice::element_of(Mask A) const {
  for (std::size_t k = 0; k < sets.size(); ++k)
    if (sets[k] == A) return static_cast<int>(k);
  return -1;
}

PropLattice proposition_lattice(const Frame& F) {
  PropLattice P;
  P.sets = F.prop_family();
  std::unordered_map<Mask, int> pos;
  for (std::size_t k = 0; k < P.sets.size(); ++k) pos.emplace(P.sets[k], static_cast<int>(k));
  std::vector<std::string> names;
  std::vector<int> neg;
  for (Mask A : P.sets) {
    if (!is_regular(F, A)) throw ValidationError("proposition " + F.set_name(A) + " is not regular");
    names.push_back(F.set_name(A));
    auto it = pos.find(neg_set(F, A));
    if (it == pos.end()) throw ValidationError("proposition family not closed under complement");
    neg.push_back(it->second);
  }
  P.lattice = Ortholattice::from_sets(std::move(names), P.sets, std::move(neg));
  if (F.has_i() || F.has_R()) {
    std::vector<int> box;
    for (Mask A : P.sets) {
      auto it = pos.find(box_set(F, A));
      if (it == pos.end()) {
        P.box_closed = false;
        break;
      }
      box.push_back(it->second);
    }
    if (P.box_closed) P.lattice.set_box(std::move(box));
  }
  if (F.has_selection()) {
    const int n = static_cast<int>(P.sets.size());
    std::vector<int> arrow(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto it = pos.find(arrow_set(F, P.sets[a], P.sets[b]));
        if (it == pos.end()) throw ValidationError("proposition family not closed under the conditional");
        arrow[a * n + b] = it->second;
      }
    P.lattice.set_arrow(std::move(arrow));
  }
  if (F.has_bool_family()) {
    std::vector<int> block;
    for (Mask A : F.bool_family()) {
      auto it = pos.find(A);
      if (it == pos.end()) throw ValidationError("Boolean family member is not a proposition");
      block.push_back(it->second);
    }
    P.lattice.set_bool_block(std::move(block));
  }
  return P;
}

Frame frame_from_lattice(const Ortholattice& L) {
  auto ji = join_irreducibles(L);
  std::vector<std::string> names;
  for (int a : ji) names.push_back(L.name(a));
  Frame F(names);
  for (std::size_t i = 0; i < ji.size(); ++i)
    for (std::size_t j = i + 1; j < ji.size(); ++j)
      if (!L.leq(ji[i], L.neg(ji[j]))) F.set_compat(static_cast<int>(i), static_cast<int>(j));
  return F;
}

// ------------------------------------------------------------- conditions

const char* to_string(FrameCondition c) {
  switch (c) {
    case FrameCondition::IRegularity: return "IRegularity";
    case FrameCondition::DTotal: return "DTotal";
    case FrameCondition::Factivity: return "Factivity";
    case FrameCondition::Knowability: return "Knowability";
    case FrameCondition::GroundingKey: return "GroundingKey";
    case FrameCondition::CRegularity: return "CRegularity";
    case FrameCondition::Id: return "Id";
    case FrameCondition::Center: return "Center";
    case FrameCondition::Comp: return "Comp";
    case FrameCondition::MustCenter: return "MustCenter";
    case FrameCondition::MustComp: return "MustComp";
    case FrameCondition::Update: return "Update";
    case FrameCondition::MustImp: return "MustImp";
    case FrameCondition::MustExp: return "MustExp";
    case FrameCondition::Preserve: return "Preserve";
    case FrameCondition::Flat: return "Flat";
    case FrameCondition::Cons: return "Cons";
    case FrameCondition::Combine: return "Combine";
    case FrameCondition::Switch: return "Switch";
    case FrameCondition::Split: return "Split";
  }
  return "?";
}

std::vector<FrameCondition> all_frame_conditions() {
  std::vector<FrameCondition> out;
  for (int k = 0; k <= static_cast<int>(FrameCondition::Split); ++k) out.push_back(static_cast<FrameCondition>(k));
  return out;
}

std::vector<FrameCondition> selection_conditions() {
  std::vector<FrameCondition> out;
  for (int k = static_cast<int>(FrameCondition::Id); k <= static_cast<int>(FrameCondition::Split); ++k)
    out.push_back(static_cast<FrameCondition>(k));
  return out;
}

int condition_number(FrameCondition c) {
  int k = static_cast<int>(c) - static_cast<int>(FrameCondition::Id);
  return k >= 0 ? 16 + k : 0;
}

std::optional<FrameCondition> frame_condition_from_string(const std::string& s) {
  for (auto c : all_frame_conditions())
    if (s == to_string(c)) return c;
  return std::nullopt;
}

namespace {

using W = std::optional<FrameWitness>;

W fail(std::vector<int> pts, std::vector<Mask> sets, std::string what) {
  return FrameWitness{std::move(pts), std::move(sets), std::move(what)};
}

void need_i(const Frame& F, FrameCondition c) {
  if (!F.has_i()) throw ValidationError(std::string(to_string(c)) + " needs an information function");
}

void need_sel(const Frame& F, FrameCondition c) {
  if (!F.has_selection()) throw ValidationError(std::string(to_string(c)) + " needs a selection function");
}

bool is_bool(const Frame& F, Mask A) {
  if (!F.has_bool_family()) return A == 0 || A == F.all();
  const auto& b = F.bool_family();
  return std::find(b.begin(), b.end(), A) != b.end();
}

// There is some y compatible with x where pred(y) holds.
template <class P>
bool some_compat(const Frame& F, int x, P&& pred) {
  Mask m = F.compat_mask(x);
  while (m) {
    int y = std::countr_zero(m);
    if (pred(y)) return true;
    m &= m - 1;
  }
  return false;
}

template <class P>
bool all_compat(const Frame& F, int x, P&& pred) {
  return !some_compat(F, x, [&](int y) { return !pred(y); });
}

W check_i_regularity(const Frame& F) {
  const int n = F.size();
  for (int x = 0; x < n; ++x) {
    int ix = F.i(x);
    if (ix < 0) continue;
    for (int y = 0; y < n; ++y) {
      if (!F.compat(y, ix)) continue;
      bool ok = some_compat(F, x, [&](int x1) {
        return all_compat(F, x1, [&](int x2) {
          int i2 = F.i(x2);
          return i2 >= 0 && F.compat(y, i2);
        });
      });
      if (!ok) return fail({x, y}, {}, "y compatible with i(x) but no x' compatible with x forces it");
    }
  }
  return std::nullopt;
}

W check_c_regularity(const Frame& F, const Mask* only = nullptr) {
  const int n = F.size();
  for (Mask A : F.prop_family()) {
    if (only && A != *only) continue;
    for (int x = 0; x < n; ++x) {
      int cx = F.c(x, A);
      if (cx < 0) continue;
      for (int y = 0; y < n; ++y) {
        if (!F.compat(y, cx)) continue;
        bool ok = some_compat(F, x, [&](int x1) {
          return all_compat(F, x1, [&](int x2) {
            int c2 = F.c(x2, A);
            return c2 >= 0 && F.compat(y, c2);
          });
        });
        if (!ok) return fail({x, y}, {A}, "y compatible with c(x,A) but c-regularity fails");
      }
    }
  }
  return std::nullopt;
}

W check_grounding(const Frame& F) {
  if (!F.has_bool_family()) throw ValidationError("GroundingKey needs a Boolean family");
  const auto& B = F.bool_family();
  if (B.empty()) return fail({}, {}, "Boolean family is empty");
  std::unordered_set<Mask> in(B.begin(), B.end());
  for (Mask A : B) {
    if (!is_regular(F, A)) return fail({}, {A}, "Boolean family member not regular");
    if (!in.count(neg_set(F, A))) return fail({}, {A}, "Boolean family not closed under complement");
    for (Mask C : B)
      if (!in.count(A & C)) return fail({}, {A, C}, "Boolean family not closed under intersection");
  }
  for (Mask A : B)
    for (Mask C : B) {
      if (A & C) continue;
      for (int x = 0; x < F.size(); ++x) {
        if (!has(A, x)) continue;
        Mask hit = F.compat_mask(x) & C;
        if (hit) return fail({x, std::countr_zero(hit)}, {A, C}, "compatible members of disjoint Boolean sets");
      }
    }
  return std::nullopt;
}

}  // namespace

namespace {

std::optional<FrameWitness> check_condition_impl(const Frame& F, FrameCondition cond, const Mask* only) {
  const int n = F.size();
  const Mask S = F.all();
  switch (cond) {
    case FrameCondition::IRegularity:
      need_i(F, cond);
      return check_i_regularity(F);
    case FrameCondition::DTotal:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        if (F.i(x) < 0) return fail({x}, {}, "i undefined");
      return std::nullopt;
    case FrameCondition::Factivity:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        if (F.i(x) >= 0 && !refines(F, x, F.i(x))) return fail({x}, {}, "x does not refine i(x)");
      return std::nullopt;
    case FrameCondition::Knowability:
      need_i(F, cond);
      for (int x = 0; x < n; ++x) {
        bool ok = false;
        for (int y = 0; y < n && !ok; ++y) ok = F.i(y) >= 0 && refines(F, F.i(y), x);
        if (!ok) return fail({x}, {}, "no y with i(y) refining x");
      }
      return std::nullopt;
    case FrameCondition::GroundingKey: return check_grounding(F);
    case FrameCondition::CRegularity:
      need_sel(F, cond);
      return check_c_regularity(F, only);
    default: break;
  }

  need_sel(F, cond);
  const auto& P = F.prop_family();
  const std::vector<Mask> outer = only ? std::vector<Mask>{*only} : P;
  switch (cond) {
    case FrameCondition::Id:
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          int cx = F.c(x, A);
          if (cx >= 0 && !has(A, cx)) return fail({x}, {A}, "c(x,A) not in A");
        }
      return std::nullopt;
    case FrameCondition::Center:
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          if (!has(A, x)) continue;
          int cx = F.c(x, A);
          if (cx < 0 || !bool_refines(F, cx, x) || !bool_refines(F, x, cx))
            return fail({x}, {A}, "x in A but c(x,A) not Boolean-equivalent to x");
        }
      return std::nullopt;
    case FrameCondition::Comp:
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          if (!(F.compat_mask(x) & A)) continue;
          int cx = F.c(x, A);
          if (cx < 0 || !bool_compat(F, cx, x)) return fail({x}, {A}, "c(x,A) not Boolean-compatible with x");
        }
      return std::nullopt;
    case FrameCondition::MustCenter:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          if (F.i(x) < 0 || !has(A, F.i(x))) continue;
          if (F.c(x, A) != x) return fail({x}, {A}, "i(x) in A but c(x,A) != x");
        }
      return std::nullopt;
    case FrameCondition::MustComp:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          bool pre = some_compat(F, x, [&](int x1) { return F.i(x1) >= 0 && has(A, F.i(x1)); });
          if (!pre) continue;
          int cx = F.c(x, A);
          if (cx < 0 || !F.compat(cx, x)) return fail({x}, {A}, "c(x,A) not compatible with x");
        }
      return std::nullopt;
    case FrameCondition::Update:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          int cx = F.c(x, A);
          if (cx < 0) continue;
          if (F.i(cx) < 0 || !has(A, F.i(cx))) return fail({x}, {A}, "i(c(x,A)) not in A");
        }
      return std::nullopt;
    case FrameCondition::MustImp:
    case FrameCondition::MustExp:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          if (cond == FrameCondition::MustExp && !is_bool(F, A)) continue;
          int ix = F.i(x);
          int cx = F.c(x, A);
          int cix = ix >= 0 ? F.c(ix, A) : -1;
          if (cx < 0 && cix < 0) continue;
          if (cx < 0 || cix < 0 || F.i(cx) < 0) return fail({x}, {A}, "c defined at only one of x,A and i(x),A");
          bool ok = cond == FrameCondition::MustImp ? bool_refines(F, F.i(cx), cix) : prop_refines(F, cix, F.i(cx));
          if (!ok)
            return fail({x}, {A},
                        cond == FrameCondition::MustImp ? "i(c(x,A)) not a Boolean refinement of c(i(x),A)"
                                                        : "c(i(x),A) not a general refinement of i(c(x,A))");
        }
      return std::nullopt;
    case FrameCondition::Preserve:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          int cx = F.c(x, A);
          if (cx < 0) continue;
          for (Mask B : P) {
            if (!has(diamond_set(F, A & B), x)) continue;
            int ix = F.i(x);
            if (ix < 0 || !has(B, ix)) continue;
            if (F.i(cx) < 0 || !has(B, F.i(cx))) return fail({x}, {A, B}, "i(x) in B but i(c(x,A)) not in B");
          }
        }
      return std::nullopt;
    case FrameCondition::Flat:
      for (int x = 0; x < n; ++x)
        for (Mask A : outer)
          for (Mask B : P) {
            Mask AB = A & B;
            int cx = F.c(x, A);
            int lhs = cx >= 0 ? F.c(cx, AB) : -1;
            int rhs = F.c(x, AB);
            if ((lhs >= 0) != (rhs >= 0)) return fail({x}, {A, B}, "definedness of c(c(x,A),A&B) and c(x,A&B) differ");
            if (lhs != rhs) return fail({x}, {A, B}, "c(c(x,A),A&B) != c(x,A&B)");
          }
      return std::nullopt;
    case FrameCondition::Cons:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          if (!has(diamond_set(F, A), x)) continue;
          int cx = F.c(x, A);
          for (int x1 = 0; x1 < n; ++x1) {
            if (!F.compat(x, x1)) continue;
            int c1 = F.c(x1, A);
            if (cx < 0 || c1 < 0 || !F.compat(c1, cx)) return fail({x, x1}, {A}, "c(x',A) not compatible with c(x,A)");
          }
        }
      return std::nullopt;
    case FrameCondition::Combine:
      need_i(F, cond);
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          int cx = F.c(x, A);
          for (int x1 = 0; x1 < n; ++x1) {
            if (!F.compat(x, x1) || !has(A, x1)) continue;
            bool ok = some_compat(F, x1, [&](int x2) {
              return F.i(x2) >= 0 && has(A, F.i(x2)) && F.c(x2, A) == cx;
            });
            if (!ok) return fail({x, x1}, {A}, "no x'' compatible with x' combining A with c(x,A)");
          }
        }
      return std::nullopt;
    case FrameCondition::Switch:
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          if (!is_bool(F, A)) continue;
          int cx = F.c(x, A);
          if (cx < 0) continue;
          for (Mask B : P) {
            if (has(neg_set(F, B), cx)) continue;
            bool ok = some_compat(F, x, [&](int x1) {
              int c1 = F.c(x1, A);
              return c1 >= 0 && has(B, c1);
            });
            if (!ok) return fail({x}, {A, B}, "c(x,A) not in ~B but no compatible x' lands in B");
          }
        }
      return std::nullopt;
    case FrameCondition::Split:
      for (int x = 0; x < n; ++x)
        for (Mask A : outer) {
          if (!is_bool(F, A)) continue;
          int cx = F.c(x, A);
          if (cx < 0) continue;
          for (Mask B : P)
            for (Mask C : P) {
              if (!has(join_set(F, B, C), cx)) continue;
              for (int x1 = 0; x1 < n; ++x1) {
                if (!F.compat(x, x1)) continue;
                bool ok = some_compat(F, x1, [&](int x2) {
                  int c2 = F.c(x2, A);
                  return c2 < 0 || has(B | C, c2);
                });
                if (!ok) return fail({x, x1}, {A, B, C}, "split fails below x'");
              }
            }
        }
      return std::nullopt;
    default: break;
  }
  (void)S;
  return std::nullopt;
}

}  // namespace

std::optional<FrameWitness> check_condition(const Frame& F, FrameCondition cond) {
  return check_condition_impl(F, cond, nullptr);
}

std::optional<FrameWitness> check_condition_for(const Frame& F, FrameCondition cond, Mask antecedent) {
  if (cond == FrameCondition::Flat) throw ValidationError("Flat relates two antecedents");
  return check_condition_impl(F, cond, &antecedent);
}

std::optional<FrameWitness> check_prop_closure(const Frame& F) {
  const auto& P = F.prop_family();
  std::unordered_set<Mask> in(P.begin(), P.end());
  for (Mask A : P) {
    if (!is_regular(F, A)) return fail({}, {A}, "proposition not regular");
    if (!in.count(neg_set(F, A))) return fail({}, {A}, "proposition family not closed under complement");
    if ((F.has_i() || F.has_R()) && !in.count(box_set(F, A)))
      return fail({}, {A}, "proposition family not closed under box");
    for (Mask B : P) {
      if (!in.count(A & B)) return fail({}, {A, B}, "proposition family not closed under intersection");
      if (F.has_selection() && !in.count(arrow_set(F, A, B)))
        return fail({}, {A, B}, "proposition family not closed under the conditional");
    }
  }
  if (F.has_bool_family())
    for (Mask A : F.bool_family())
      if (!in.count(A)) return fail({}, {A}, "Boolean family member outside the proposition family");
  return std::nullopt;
}

std::optional<FrameWitness> check_epistemic(const Frame& F) {
  for (auto c : {FrameCondition::DTotal, FrameCondition::IRegularity, FrameCondition::Factivity,
                 FrameCondition::Knowability})
    if (auto w = check_condition(F, c)) {
      w->what = std::string(to_string(c)) + ": " + w->what;
      return w;
    }
  if (F.has_bool_family())
    if (auto w = check_condition(F, FrameCondition::GroundingKey)) return w;
  if (auto w = check_prop_closure(F)) return w;
  if (F.has_selection())
    if (auto w = check_condition(F, FrameCondition::CRegularity)) return w;
  return std::nullopt;
}

// ------------------------------------------------------------- constructions

ProductFrame product(const Frame& F1, const Frame& F2) {
  if (!F1.has_R() || !F2.has_R()) throw ValidationError("product needs accessibility relations on both frames");
  if (F1.size() * F2.size() > kMaxPoints) throw ValidationError("product exceeds 64 possibilities");
  ProductFrame P;
  std::vector<std::string> names;
  for (int a = 0; a < F1.size(); ++a)
    for (int b = 0; b < F2.size(); ++b) {
      names.push_back("(" + F1.name(a) + "," + F2.name(b) + ")");
      P.origin.emplace_back(a, b);
    }
  P.frame = Frame(names);
  const int n = static_cast<int>(names.size());
  for (int u = 0; u < n; ++u) {
    auto [a, b] = P.origin[u];
    Mask succ = 0;
    for (int v = 0; v < n; ++v) {
      auto [c, d] = P.origin[v];
      if (v > u && F1.compat(a, c) && F2.compat(b, d)) P.frame.set_compat(u, v);
      if (has(F1.R(a), c) && has(F2.R(b), d)) succ |= bit(v);
    }
    P.frame.set_R(u, succ);
  }
  return P;
}

Frame relational_to_functional(const Frame& F, std::vector<Mask>* props) {
  if (!F.has_R()) throw ValidationError("no accessibility relation to functionalize");
  const int n = F.size();
  std::vector<Mask> vals = props ? *props : std::vector<Mask>{};
  // Compatibility profile over the original points and truth profile per x.
  std::vector<Mask> profile(n);
  std::vector<std::vector<bool>> truth(n, std::vector<bool>(vals.size()));
  for (int x = 0; x < n; ++x) {
    Mask succ = F.R(x);
    if (!succ) throw ValidationError("possibility " + F.name(x) + " has no accessible possibility");
    each(succ, [&](int s) { profile[x] |= F.compat_mask(s); });
    for (std::size_t k = 0; k < vals.size(); ++k) truth[x][k] = subset(succ, vals[k]);
  }
  auto truth_at = [&](int z) {
    std::vector<bool> t(vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) t[k] = has(vals[k], z);
    return t;
  };

  Frame G(F.names());
  for (int x = 0; x < n; ++x)
    each(F.compat_mask(x), [&](int y) {
      if (y > x) G.set_compat(x, y);
    });
  if (F.has_bool_family()) G.set_bool_family(F.bool_family());

  // fresh[k] = originating x for fresh point n+k
  std::vector<int> fresh;
  std::vector<int> target(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int z = 0; z < n && target[x] < 0; ++z)
      if (F.compat_mask(z) == profile[x] && truth_at(z) == truth[x]) target[x] = z;
    for (std::size_t k = 0; k < fresh.size() && target[x] < 0; ++k) {
      int w = fresh[k];
      if (profile[w] == profile[x] && truth[w] == truth[x] && F.R(w) == F.R(x)) target[x] = n + static_cast<int>(k);
    }
    if (target[x] < 0) {
      std::string nm = F.name(x);
      nm = nm.size() > 1 && nm.front() == '(' ? "i" + nm : "i(" + nm + ")";
      target[x] = G.add_point(nm);
      fresh.push_back(x);
    }
  }
  // Fresh points: compatible with originals per profile, with each other when
  // some successors are compatible.
  for (std::size_t k = 0; k < fresh.size(); ++k) {
    int f = n + static_cast<int>(k);
    int w = fresh[k];
    each(profile[w], [&](int y) { G.set_compat(f, y); });
    for (std::size_t j = 0; j < k; ++j) {
      int v = fresh[j];
      bool meet = false;
      each(F.R(w), [&](int s) { meet = meet || (F.compat_mask(s) & F.R(v)) != 0; });
      if (meet) G.set_compat(f, n + static_cast<int>(j));
    }
  }
  for (int x = 0; x < n; ++x) G.set_i(x, target[x]);
  for (std::size_t k = 0; k < fresh.size(); ++k) G.set_i(n + static_cast<int>(k), n + static_cast<int>(k));

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (has(F.R(x), y) != refines(G, y, G.i(x)))
        throw ValidationError("functionalization breaks xRy <=> y refines i(x) at " + F.name(x) + "," + F.name(y));
  if (props)
    for (std::size_t k = 0; k < vals.size(); ++k)
      for (std::size_t j = 0; j < fresh.size(); ++j)
        if (truth[fresh[j]][k]) (*props)[k] |= bit(n + static_cast<int>(j));
  return G;
}

}  // namespace orth
