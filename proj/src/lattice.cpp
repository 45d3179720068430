#include "orth/lattice.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "orth/error.hpp"

namespace orth {

namespace {

// Dense bit rows for order closure on lattices larger than 64 elements.
struct Rows {
  int n = 0, words = 0;
  std::vector<std::uint64_t> bits;
  explicit Rows(int n_) : n(n_), words((n_ + 63) / 64), bits(static_cast<std::size_t>(n_) * words, 0) {}
  std::uint64_t* row(int i) { return &bits[static_cast<std::size_t>(i) * words]; }
  const std::uint64_t* row(int i) const { return &bits[static_cast<std::size_t>(i) * words]; }
  void set(int i, int j) { row(i)[j / 64] |= std::uint64_t{1} << (j % 64); }
  bool get(int i, int j) const { return (row(i)[j / 64] >> (j % 64)) & 1u; }
};

}  // namespace

int Ortholattice::index(const std::string& name) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return -1;
}

int Ortholattice::box(int a) const {
  if (box_.empty()) throw ValidationError("lattice has no box table");
  return box_[a];
}

int Ortholattice::arrow(int a, int b) const {
  if (arrow_.empty()) throw ValidationError("lattice has no arrow table");
  return arrow_[a * n_ + b];
}

bool Ortholattice::in_block(int a) const { return !in_block_.empty() && in_block_[a]; }

void Ortholattice::set_box(std::vector<int> box) {
  if (static_cast<int>(box.size()) != n_) throw ValidationError("box table has wrong size");
  for (int v : box)
    if (v < 0 || v >= n_) throw ValidationError("box table value out of range");
  box_ = std::move(box);
}

void Ortholattice::set_bool_block(std::vector<int> block) {
  std::sort(block.begin(), block.end());
  block.erase(std::unique(block.begin(), block.end()), block.end());
  in_block_.assign(n_, 0);
  for (int v : block) {
    if (v < 0 || v >= n_) throw ValidationError("Boolean block element out of range");
    in_block_[v] = 1;
  }
  block_ = std::move(block);
}

void Ortholattice::set_arrow(std::vector<int> table) {
  if (static_cast<long>(table.size()) != static_cast<long>(n_) * n_)
    throw ValidationError("arrow table has wrong size");
  for (int v : table)
    if (v < 0 || v >= n_) throw ValidationError("arrow table value out of range");
  arrow_ = std::move(table);
}

Ortholattice Ortholattice::from_order(std::vector<std::string> names,
                                      const std::vector<std::pair<int, int>>& leq, std::vector<int> neg) {
  Ortholattice L;
  L.n_ = static_cast<int>(names.size());
  if (L.n_ == 0) throw ValidationError("lattice needs at least one element");
  if (static_cast<int>(neg.size()) != L.n_) throw ValidationError("complement table has wrong size");
  for (int v : neg)
    if (v < 0 || v >= L.n_) throw ValidationError("complement value out of range");
  L.names_ = std::move(names);
  L.neg_ = std::move(neg);
  const int n = L.n_;

  Rows up(n);
  for (int i = 0; i < n; ++i) up.set(i, i);
  for (auto [a, b] : leq) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw ValidationError("order pair out of range");
    up.set(a, b);
  }
  // Warshall on rows: if i <= k then i <= everything above k.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (up.get(i, k)) {
        auto* ri = up.row(i);
        const auto* rk = up.row(k);
        for (int w = 0; w < up.words; ++w) ri[w] |= rk[w];
      }
  L.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) L.leq_[i * n + j] = up.get(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (L.leq(i, j) && L.leq(j, i))
        throw ValidationError("order is not antisymmetric: " + L.names_[i] + " and " + L.names_[j]);
  L.tabulate_from_leq();
  return L;
}

void Ortholattice::tabulate_from_leq() {
  const int n = n_;
  Rows down(n);
  std::vector<int> pop(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq(j, i)) {
        down.set(i, j);
        ++pop[i];
      }
  meet_.assign(static_cast<std::size_t>(n) * n, -1);
  join_.assign(static_cast<std::size_t>(n) * n, -1);
  std::vector<std::uint64_t> inter(down.words);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      // The meet is the lower bound whose down-set is the whole common down-set.
      int total = 0;
      for (int w = 0; w < down.words; ++w) {
        inter[w] = down.row(a)[w] & down.row(b)[w];
        total += std::popcount(inter[w]);
      }
      int m = -1;
      for (int c = 0; c < n && m < 0; ++c)
        if (pop[c] == total && ((inter[c / 64] >> (c % 64)) & 1u)) m = c;
      if (m < 0) throw ValidationError("no meet for " + names_[a] + " and " + names_[b]);
      meet_[a * n + b] = meet_[b * n + a] = m;
    }
  Rows upr(n);
  std::vector<int> upop(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (leq(i, j)) {
        upr.set(i, j);
        ++upop[i];
      }
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      int total = 0;
      for (int w = 0; w < upr.words; ++w) {
        inter[w] = upr.row(a)[w] & upr.row(b)[w];
        total += std::popcount(inter[w]);
      }
      int j = -1;
      for (int c = 0; c < n && j < 0; ++c)
        if (upop[c] == total && ((inter[c / 64] >> (c % 64)) & 1u)) j = c;
      if (j < 0) throw ValidationError("no join for " + names_[a] + " and " + names_[b]);
      join_[a * n + b] = join_[b * n + a] = j;
    }
  bot_ = top_ = 0;
  for (int i = 0; i < n; ++i) {
    bot_ = meet(bot_, i);
    top_ = join(top_, i);
  }
}

Ortholattice Ortholattice::from_sets(std::vector<std::string> names, const std::vector<Mask>& sets,
                                     std::vector<int> neg) {
  Ortholattice L;
  const int n = static_cast<int>(sets.size());
  if (n == 0) throw ValidationError("lattice needs at least one element");
  if (static_cast<int>(names.size()) != n || static_cast<int>(neg.size()) != n)
    throw ValidationError("names/complement tables have wrong size");
  L.n_ = n;
  L.names_ = std::move(names);
  L.neg_ = std::move(neg);
  std::unordered_map<Mask, int> where;
  for (int i = 0; i < n; ++i)
    if (!where.emplace(sets[i], i).second) throw ValidationError("duplicate set in family");
  L.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  L.meet_.assign(static_cast<std::size_t>(n) * n, -1);
  L.join_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      L.leq_[a * n + b] = subset(sets[a], sets[b]);
      auto it = where.find(sets[a] & sets[b]);
      if (it == where.end()) throw ValidationError("family not closed under intersection");
      L.meet_[a * n + b] = it->second;
    }
  for (int a = 0; a < n; ++a) {
    int na = L.neg_[a];
    if (na < 0 || na >= n || L.neg_[na] != a) throw ValidationError("complement is not an involution");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (L.leq(a, b) && !L.leq(L.neg_[b], L.neg_[a]))
        throw ValidationError("complement is not order-reversing");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) L.join_[a * n + b] = L.neg_[L.meet(L.neg_[a], L.neg_[b])];
  Mask all = 0, none = ~Mask{0};
  for (Mask s : sets) {
    all |= s;
    none &= s;
  }
  auto tb = where.find(all), bb = where.find(none);
  if (tb == where.end() || bb == where.end()) throw ValidationError("family lacks bounds");
  L.top_ = tb->second;
  L.bot_ = bb->second;
  return L;
}

Ortholattice Ortholattice::plain() const {
  Ortholattice L = *this;
  L.box_.clear();
  L.arrow_.clear();
  L.block_.clear();
  L.in_block_.clear();
  return L;
}

std::vector<std::pair<int, int>> Ortholattice::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool direct = true;
      for (int c = 0; c < n_ && direct; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

// ------------------------------------------------------------- properties

const char* to_string(LatticeProperty p) {
  switch (p) {
    case LatticeProperty::Ortholattice: return "Ortholattice";
    case LatticeProperty::Distributive: return "Distributive";
    case LatticeProperty::Orthomodular: return "Orthomodular";
    case LatticeProperty::Pseudocomplement: return "Pseudocomplement";
    case LatticeProperty::Modal: return "Modal";
    case LatticeProperty::D: return "D";
    case LatticeProperty::T: return "T";
    case LatticeProperty::Wittgenstein: return "Wittgenstein";
    case LatticeProperty::Four: return "Four";
    case LatticeProperty::Five: return "Five";
    case LatticeProperty::B: return "B";
    case LatticeProperty::BooleanBlockOK: return "BooleanBlockOK";
    case LatticeProperty::ArrowNormal: return "ArrowNormal";
  }
  return "?";
}

std::vector<LatticeProperty> all_lattice_properties() {
  return {LatticeProperty::Ortholattice, LatticeProperty::Distributive,   LatticeProperty::Orthomodular,
          LatticeProperty::Pseudocomplement, LatticeProperty::Modal,      LatticeProperty::D,
          LatticeProperty::T,            LatticeProperty::Wittgenstein,   LatticeProperty::Four,
          LatticeProperty::Five,         LatticeProperty::B,              LatticeProperty::BooleanBlockOK,
          LatticeProperty::ArrowNormal};
}

std::optional<LatticeProperty> lattice_property_from_string(const std::string& s) {
  for (auto p : all_lattice_properties())
    if (s == to_string(p)) return p;
  return std::nullopt;
}

std::optional<Witness> check_lattice(const Ortholattice& L) {
  const int n = L.size();
  for (int a = 0; a < n; ++a) {
    if (L.meet(a, a) != a || L.join(a, a) != a) return Witness{{a}, "idempotence"};
    if (L.meet(a, L.bottom()) != L.bottom() || L.join(a, L.top()) != L.top())
      return Witness{{a}, "boundedness"};
    if (L.neg(L.neg(a)) != a) return Witness{{a}, "involution: ~~a != a"};
    if (L.join(a, L.neg(a)) != L.top()) return Witness{{a}, "complementation: a \\/ ~a != 1"};
    if (L.meet(a, L.neg(a)) != L.bottom()) return Witness{{a}, "complementation: a & ~a != 0"};
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (L.meet(a, b) != L.meet(b, a) || L.join(a, b) != L.join(b, a)) return Witness{{a, b}, "commutativity"};
      if (L.meet(a, L.join(a, b)) != a || L.join(a, L.meet(a, b)) != a) return Witness{{a, b}, "absorption"};
      if (L.neg(L.join(a, b)) != L.meet(L.neg(a), L.neg(b))) return Witness{{a, b}, "De Morgan"};
    }
  // Associativity follows from tabulating meets as greatest lower bounds; the
  // explicit triple check is kept for small lattices.
  if (n <= 128)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          if (L.meet(a, L.meet(b, c)) != L.meet(L.meet(a, b), c)) return Witness{{a, b, c}, "associativity of meet"};
          if (L.join(a, L.join(b, c)) != L.join(L.join(a, b), c)) return Witness{{a, b, c}, "associativity of join"};
        }
  return std::nullopt;
}

namespace {

void need_box(const Ortholattice& L, LatticeProperty p) {
  if (!L.has_box()) throw ValidationError(std::string("property ") + to_string(p) + " needs a box table");
}

}  // namespace

std::optional<Witness> check_property(const Ortholattice& L, LatticeProperty p) {
  const int n = L.size();
  const int zero = L.bottom(), one = L.top();
  switch (p) {
    case LatticeProperty::Ortholattice: return check_lattice(L);
    case LatticeProperty::Distributive:
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c)))
              return Witness{{a, b, c}, "a & (b \\/ c) != (a & b) \\/ (a & c)"};
      return std::nullopt;
    case LatticeProperty::Orthomodular:
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (L.join(a, L.meet(L.neg(a), L.join(a, b))) != L.join(a, b))
            return Witness{{a, b}, "a \\/ (~a & (a \\/ b)) != a \\/ b"};
      return std::nullopt;
    case LatticeProperty::Pseudocomplement:
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (L.meet(a, b) == zero && !L.leq(b, L.neg(a))) return Witness{{a, b}, "a & b = 0 but b !<= ~a"};
      return std::nullopt;
    case LatticeProperty::Modal:
      need_box(L, p);
      if (L.box(one) != one) return Witness{{one}, "[]1 != 1"};
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (L.box(L.meet(a, b)) != L.meet(L.box(a), L.box(b))) return Witness{{a, b}, "[](a & b) != []a & []b"};
      return std::nullopt;
    case LatticeProperty::D:
      need_box(L, p);
      if (L.box(zero) != zero) return Witness{{zero}, "[]0 != 0"};
      return std::nullopt;
    case LatticeProperty::T:
      need_box(L, p);
      for (int a = 0; a < n; ++a)
        if (!L.leq(L.box(a), a)) return Witness{{a}, "[]a !<= a"};
      return std::nullopt;
    case LatticeProperty::Wittgenstein:
      need_box(L, p);
      for (int a = 0; a < n; ++a)
        if (L.meet(L.neg(a), L.dia(a)) != zero) return Witness{{a}, "~a & <>a != 0"};
      return std::nullopt;
    case LatticeProperty::Four:
      need_box(L, p);
      for (int a = 0; a < n; ++a)
        if (!L.leq(L.box(a), L.box(L.box(a)))) return Witness{{a}, "[]a !<= [][]a"};
      return std::nullopt;
    case LatticeProperty::Five:
      need_box(L, p);
      for (int a = 0; a < n; ++a)
        if (!L.leq(L.dia(a), L.box(L.dia(a)))) return Witness{{a}, "<>a !<= []<>a"};
      return std::nullopt;
    case LatticeProperty::B:
      need_box(L, p);
      for (int a = 0; a < n; ++a)
        if (!L.leq(a, L.box(L.dia(a)))) return Witness{{a}, "a !<= []<>a"};
      return std::nullopt;
    case LatticeProperty::BooleanBlockOK: {
      if (!L.has_bool_block()) throw ValidationError("property BooleanBlockOK needs a Boolean block");
      const auto& blk = L.bool_block();
      if (!L.in_block(zero) || !L.in_block(one)) return Witness{{}, "block lacks 0 or 1"};
      for (int a : blk) {
        if (!L.in_block(L.neg(a))) return Witness{{a}, "block not closed under ~"};
        for (int b : blk)
          if (!L.in_block(L.meet(a, b)) || !L.in_block(L.join(a, b)))
            return Witness{{a, b}, "block not closed under & or \\/"};
      }
      for (int a : blk)
        for (int b : blk)
          for (int c : blk)
            if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c)))
              return Witness{{a, b, c}, "block not distributive"};
      return std::nullopt;
    }
    case LatticeProperty::ArrowNormal:
      if (!L.has_arrow()) throw ValidationError("property ArrowNormal needs an arrow table");
      for (int a = 0; a < n; ++a) {
        if (L.arrow(a, one) != one) return Witness{{a}, "a -> 1 != 1"};
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            if (L.meet(L.arrow(a, b), L.arrow(a, c)) != L.arrow(a, L.meet(b, c)))
              return Witness{{a, b, c}, "(a -> b) & (a -> c) != a -> (b & c)"};
      }
      return std::nullopt;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- evaluation

int eval_alg(const Ortholattice& L, const AlgValuation& v, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::BoolAtom: {
      auto it = v.find(f.name());
      if (it == v.end()) throw ValidationError("valuation has no value for atom " + f.name());
      int e = it->second;
      if (e < 0 || e >= L.size()) throw ValidationError("valuation value out of range for " + f.name());
      if (f.kind() == Kind::BoolAtom) {
        bool ok = L.has_bool_block() ? L.in_block(e) : (e == L.bottom() || e == L.top());
        if (!ok) throw ValidationError("Boolean atom " + f.name() + " mapped outside the Boolean block");
      }
      return e;
    }
    case Kind::Bot: return L.bottom();
    case Kind::Top: return L.top();
    case Kind::Neg: return L.neg(eval_alg(L, v, f.left()));
    case Kind::And: return L.meet(eval_alg(L, v, f.left()), eval_alg(L, v, f.right()));
    case Kind::Box: return L.box(eval_alg(L, v, f.left()));
    case Kind::Cond: return L.arrow(eval_alg(L, v, f.left()), eval_alg(L, v, f.right()));
  }
  return L.bottom();
}

bool entails_alg(const Ortholattice& L, const AlgValuation& v, const Formula& f, const Formula& g) {
  return L.leq(eval_alg(L, v, f), eval_alg(L, v, g));
}

std::vector<int> join_irreducibles(const Ortholattice& L) {
  std::vector<int> out;
  for (int a = 0; a < L.size(); ++a) {
    if (a == L.bottom()) continue;
    int below = L.bottom();
    for (int b = 0; b < L.size(); ++b)
      if (b != a && L.leq(b, a)) below = L.join(below, b);
    if (below != a) out.push_back(a);
  }
  return out;
}

namespace {

struct IsoSearch {
  const Ortholattice& A;
  const Ortholattice& B;
  std::vector<long> sigA, sigB;
  std::vector<int> map, used;

  long signature(const Ortholattice& L, int a) const {
    long down = 0, up = 0;
    for (int b = 0; b < L.size(); ++b) {
      down += L.leq(b, a);
      up += L.leq(a, b);
    }
    long s = down * 1000 + up;
    s = s * 2 + (L.neg(a) == a);
    if (L.has_box()) s = s * 2 + (L.box(a) == a);
    if (L.has_bool_block()) s = s * 2 + L.in_block(a);
    return s;
  }

  bool consistent(int a, int x) const {
    if (sigA[a] != sigB[x]) return false;
    for (int b = 0; b < A.size(); ++b) {
      int y = map[b];
      if (y < 0) continue;
      if (A.leq(a, b) != B.leq(x, y) || A.leq(b, a) != B.leq(y, x)) return false;
      if (A.neg(a) == b && B.neg(x) != y) return false;
      if (A.neg(b) == a && B.neg(y) != x) return false;
      if (A.has_box()) {
        if (A.box(a) == b && B.box(x) != y) return false;
        if (A.box(b) == a && B.box(y) != x) return false;
      }
    }
    if (A.neg(a) == a && B.neg(x) != x) return false;
    if (A.has_box() && A.box(a) == a && B.box(x) != x) return false;
    return true;
  }

  bool full_check() const {
    const int n = A.size();
    for (int a = 0; a < n; ++a) {
      if (B.neg(map[a]) != map[A.neg(a)]) return false;
      if (A.has_box() && B.box(map[a]) != map[A.box(a)]) return false;
      if (A.has_bool_block() && A.in_block(a) != B.in_block(map[a])) return false;
      for (int b = 0; b < n; ++b) {
        if (A.leq(a, b) != B.leq(map[a], map[b])) return false;
        if (A.has_arrow() && B.arrow(map[a], map[b]) != map[A.arrow(a, b)]) return false;
      }
    }
    return true;
  }

  bool go(int a) {
    if (a == A.size()) return full_check();
    for (int x = 0; x < B.size(); ++x) {
      if (used[x] || !consistent(a, x)) continue;
      map[a] = x;
      used[x] = 1;
      if (go(a + 1)) return true;
      map[a] = -1;
      used[x] = 0;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> iso_check(const Ortholattice& a, const Ortholattice& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.has_box() != b.has_box() || a.has_arrow() != b.has_arrow() ||
      a.has_bool_block() != b.has_bool_block())
    return std::nullopt;
  if (a.has_bool_block() && a.bool_block().size() != b.bool_block().size()) return std::nullopt;
  IsoSearch s{a, b, {}, {}, std::vector<int>(a.size(), -1), std::vector<int>(b.size(), 0)};
  for (int i = 0; i < a.size(); ++i) {
    s.sigA.push_back(s.signature(a, i));
    s.sigB.push_back(s.signature(b, i));
  }
  auto sa = s.sigA, sb = s.sigB;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  if (!s.go(0)) return std::nullopt;
  return s.map;
}

Ortholattice generated_subortholattice(const Ortholattice& L, const std::vector<int>& gens) {
  std::vector<char> in(L.size(), 0);
  std::vector<int> items;
  auto add = [&](int a) {
    if (!in[a]) {
      in[a] = 1;
      items.push_back(a);
    }
  };
  add(L.bottom());
  add(L.top());
  for (int g : gens) {
    if (g < 0 || g >= L.size()) throw ValidationError("generator out of range");
    add(g);
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    int a = items[k];
    add(L.neg(a));
    for (std::size_t j = 0; j <= k; ++j) {
      add(L.meet(a, items[j]));
      add(L.join(a, items[j]));
    }
  }
  std::sort(items.begin(), items.end());
  std::vector<int> pos(L.size(), -1);
  for (std::size_t i = 0; i < items.size(); ++i) pos[items[i]] = static_cast<int>(i);
  std::vector<std::string> names;
  std::vector<int> neg;
  std::vector<std::pair<int, int>> leq;
  for (int a : items) {
    names.push_back(L.name(a));
    neg.push_back(pos[L.neg(a)]);
    for (int b : items)
      if (L.leq(a, b)) leq.emplace_back(pos[a], pos[b]);
  }
  Ortholattice S = Ortholattice::from_order(names, leq, neg);
  if (L.has_box()) {
    std::vector<int> box;
    bool closed = true;
    for (int a : items) {
      int b = L.box(a);
      if (pos[b] < 0) closed = false;
      box.push_back(pos[b]);
    }
    if (closed) S.set_box(box);
  }
  return S;
}

}  // namespace orth
