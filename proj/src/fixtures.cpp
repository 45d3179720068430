#include "orth/fixtures.hpp"

#include "orth/error.hpp"

namespace orth::fixtures {

namespace {

Ortholattice from_hasse(std::vector<std::string> names, const std::vector<std::pair<int, int>>& edges,
                        const std::vector<std::pair<int, int>>& negpairs) {
  std::vector<int> neg(names.size(), -1);
  for (auto [a, b] : negpairs) {
    neg[a] = b;
    neg[b] = a;
  }
  return Ortholattice::from_order(std::move(names), edges, std::move(neg));
}

Mask set_of(const Frame& F, std::initializer_list<const char*> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return F.parse_set(v);
}

Model product_model(const Model& A, const Model& B) {
  auto P = product(A.frame, B.frame);
  Model M;
  M.frame = P.frame;
  std::set<std::string> vars;
  for (const auto& kv : A.valuation) vars.insert(kv.first);
  for (const auto& kv : B.valuation) vars.insert(kv.first);
  for (const auto& v : vars) {
    Mask m = 0;
    auto ia = A.valuation.find(v), ib = B.valuation.find(v);
    for (std::size_t k = 0; k < P.origin.size(); ++k) {
      auto [a, b] = P.origin[k];
      bool t = (ia != A.valuation.end() && has(ia->second, a)) || (ib != B.valuation.end() && has(ib->second, b));
      if (t) m |= bit(static_cast<int>(k));
    }
    M.valuation[v] = m;
  }
  return M;
}

Model scale_relational_named(const std::string& prefix, const std::string& var) {
  Model M;
  M.frame = chain(5, prefix);
  for (int x = 0; x < 5; ++x) M.frame.set_R(x, bit(x));
  M.frame.set_R(1, bit(0) | bit(1) | bit(2));
  M.frame.set_R(3, bit(2) | bit(3) | bit(4));
  M.valuation[var] = bit(0) | bit(1);
  return M;
}

}  // namespace

Ortholattice two() { return from_hasse({"0", "1"}, {{0, 1}}, {{0, 1}}); }

Ortholattice o6() {
  return from_hasse({"0", "a", "b", "~a", "~b", "1"}, {{0, 1}, {1, 2}, {2, 5}, {0, 4}, {4, 3}, {3, 5}},
                    {{0, 5}, {1, 3}, {2, 4}});
}

Ortholattice mo2() {
  return from_hasse({"0", "a", "~a", "b", "~b", "1"}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}},
                    {{0, 5}, {1, 2}, {3, 4}});
}

Ortholattice fig1() {
  // 0 p ~p []p []~p <>p <>~p <>p&<>~p []p\/[]~p 1
  Ortholattice L = from_hasse({"0", "p", "~p", "[]p", "[]~p", "<>p", "<>~p", "<>p&<>~p", "[]p\\/[]~p", "1"},
                              {{0, 3}, {0, 4}, {0, 7}, {3, 1}, {1, 5}, {4, 2}, {2, 6}, {3, 8}, {4, 8}, {7, 5},
                               {7, 6}, {5, 9}, {6, 9}, {8, 9}},
                              {{0, 9}, {1, 2}, {3, 6}, {4, 5}, {7, 8}});
  L.set_box({0, 3, 4, 3, 4, 5, 6, 7, 8, 9});
  return L;
}

Measure fig1_measure() {
  return {Rational(0), Rational(9, 10), Rational(1, 10), Rational(0), Rational(0),
          Rational(1), Rational(1),     Rational(1),     Rational(0), Rational(1)};
}

Frame chain(int n, const std::string& prefix) {
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back(prefix + std::to_string(k));
  Frame F(names);
  for (int k = 0; k + 1 < n; ++k) F.set_compat(k, k + 1);
  return F;
}

Frame cycle4() {
  Frame F({"w1", "w2", "w3", "w4"});
  for (int k = 0; k < 4; ++k) F.set_compat(k, (k + 1) % 4);
  return F;
}

Model scale() {
  Model M;
  M.frame = chain(5);
  Frame& F = M.frame;
  int y = F.add_point("i(x2)"), z = F.add_point("i(x4)");
  for (int x : {0, 1, 2, 3}) F.set_compat(y, x);
  for (int x : {1, 2, 3, 4}) F.set_compat(z, x);
  F.set_compat(y, z);
  for (int x = 0; x < F.size(); ++x) F.set_i(x, x);
  F.set_i(1, y);
  F.set_i(3, z);
  M.valuation["p"] = bit(0) | bit(1);
  return M;
}

Model scale_relational() { return scale_relational_named("x", "p"); }

Model grid() { return product_model(scale_relational_named("x", "p"), scale_relational_named("y", "q")); }

Model grid_cut() {
  Model M = grid();
  Frame& F = M.frame;
  int from = F.index("(x4,y4)"), to = F.index("(x3,y3)");
  F.set_R(from, F.R(from) & ~bit(to));
  return M;
}

Model conditional(bool as_printed) {
  Model M;
  Frame F({"x1", "x2", "x3", "x4", "x5", "y", "z", "u"});
  for (int k = 0; k < 4; ++k) F.set_compat(k, k + 1);
  const int y = 5, z = 6, u = 7;
  for (int x : {0, 1, 2, 3}) F.set_compat(y, x);
  for (int x : {1, 2, 3, 4}) F.set_compat(z, x);
  F.set_compat(y, z);
  for (int x : {0, 1, 3, 4, 5, 6}) F.set_compat(u, x);
  for (int x = 0; x < F.size(); ++x) F.set_i(x, x);
  F.set_i(1, y);
  F.set_i(3, z);
  F.set_bool_family({0, set_of(F, {"x1", "x2"}), set_of(F, {"x4", "x5"}), F.all()});
  F.enable_selection();
  // c-table rows: antecedent -> selected point at x1 x2 x3 x4 x5 y z u
  struct Row {
    std::initializer_list<const char*> set;
    std::initializer_list<const char*> to;
  };
  const std::vector<Row> rows = {
      {{"x1"}, {"x1", "x1", "x1", "x1", "x1", "x1", "x1", "x1"}},
      {{"x3"}, {"x3", "x3", "x3", "x3", "x3", "x3", "x3", "x3"}},
      {{"x5"}, {"x5", "x5", "x5", "x5", "x5", "x5", "x5", "x5"}},
      {{"x1", "x2"}, {"x1", "x1", "x1", "x1", "x1", "x1", "x1", "x1"}},
      {{"x4", "x5"}, {"x5", "x5", "x5", "x5", "x5", "x5", "x5", "x5"}},
      {{"x1", "x5", "u"}, {"x1", "x1", "u", "x5", "x5", "u", "u", "u"}},
      {{"x1", "x2", "x3", "y"}, {"x1", "x2", "x3", "y", "y", "y", "y", "y"}},
      {{"x3", "x4", "x5", "z"}, {"z", "z", "x3", "x4", "x5", "z", "z", "z"}},
      {{"x1", "x2", "x3", "x4", "x5", "y", "z", "u"}, {"x1", "x2", "x3", "x4", "x5", "y", "z", "u"}},
  };
  for (const auto& r : rows) {
    Mask A = set_of(F, r.set);
    int x = 0;
    for (const char* t : r.to) F.set_c(x++, A, F.index(t));
  }
  if (as_printed) {
    // The published row selects x1 at y and x5 at z, which contradicts the
    // published arrow table and makes A -> []p non-regular.
    Mask A = set_of(F, {"x1", "x5", "u"});
    F.set_c(5, A, 0);
    F.set_c(6, A, 4);
  }
  M.frame = F;
  M.valuation["p"] = set_of(M.frame, {"x1", "x2"});
  M.valuation["q"] = set_of(M.frame, {"x4", "x5"});
  return M;
}

namespace {

Measure point_mass(const PropLattice& P, int world) {
  Measure mu;
  for (Mask A : P.sets) mu.push_back(has(A, world) ? Rational(1) : Rational(0));
  return mu;
}

}  // namespace

ProbAssignment scale_assignment(const PropLattice& P) {
  // mu_1 = point mass at the world x1, mu_0 = point mass at the world x5.
  Measure one = point_mass(P, 0), zero = point_mass(P, 4);
  ProbAssignment PA;
  PA.at = {{one}, {one}, {one, zero}, {zero}, {zero}, {one}, {zero}};
  return PA;
}

Frame two_worlds() {
  Frame F({"w1", "w2"});
  F.set_i(0, 0);
  F.set_i(1, 1);
  return F;
}

ProbAssignment two_worlds_assignment(const PropLattice& P) {
  ProbAssignment PA;
  PA.at = {{point_mass(P, 0)}, {point_mass(P, 1)}};
  return PA;
}

std::vector<std::string> fixture_names() {
  return {"two",   "o6",    "mo2",      "fig1",        "fig1-measure", "chain4",        "chain5",    "cycle4",
          "scale", "scale-relational", "grid", "grid-cut", "conditional", "scale-measures", "two-worlds"};
}

}  // namespace orth::fixtures
