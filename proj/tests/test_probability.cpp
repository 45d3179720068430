#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "orth/error.hpp"
#include "orth/fixtures.hpp"
#include "orth/probability.hpp"

using namespace orth;

namespace {

// boost::rational's mixed comparisons misbehave under C++20; compare with these.
const Rational R0(0), R1(1);

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// Additivity by definition, independent of check_measure.
bool additive(const Ortholattice& L, const Measure& mu) {
  if (mu[L.top()] != R1) return false;
  for (int a = 0; a < L.size(); ++a)
    for (int b = 0; b < L.size(); ++b)
      if (L.leq(a, L.neg(b)) && mu[oracle::lub(L, a, b)] != mu[a] + mu[b]) return false;
  return true;
}

// Weighted point masses at worlds of a frame, over its proposition lattice.
Measure mixture(const PropLattice& P, const std::vector<std::pair<int, Rational>>& weights) {
  Measure mu(P.sets.size(), R0);
  for (std::size_t k = 0; k < P.sets.size(); ++k)
    for (const auto& [w, r] : weights)
      if (oracle::in(P.sets[k], w)) mu[k] += r;
  return mu;
}

}  // namespace

TEST_SUITE("probability") {

TEST_CASE("rationals") {
  CHECK(parse_rational("9/10") == R(9, 10));
  CHECK(parse_rational("0.9") == R(9, 10));
  CHECK(parse_rational("1") == R1);
  CHECK(parse_rational("2/4") == R(1, 2));
  CHECK(format_rational(R(3, 6)) == "1/2");
  CHECK(format_rational(R1) == "1");
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("the published measure") {
  auto L = fixtures::fig1();
  auto mu = fixtures::fig1_measure();
  CHECK(mu[L.index("p")] == R(9, 10));
  CHECK(mu[L.index("~p")] == R(1, 10));
  CHECK(mu[L.index("<>p&<>~p")] == R1);
  CHECK(is_introspective(L, mu));
  auto gap = total_probability_gap(L, mu, L.index("<>p"), L.index("p"));
  CHECK(gap.first == R1);
  CHECK(gap.second == R(9, 10));
  // The values are not additive: p <= ~[]~p but mu(p \/ []~p) = 1 != 9/10 + 0.
  auto w = check_measure(L, mu);
  REQUIRE(w);
  CHECK(L.name(w->elems[0]) == "p");
  CHECK(L.name(w->elems[1]) == "[]~p");
  CHECK_FALSE(additive(L, mu));
}

TEST_CASE("every valid measure on the fig1 lattice is flat on the middle") {
  // Valid measures are determined by mu(p); enumerate a grid of values and
  // check by brute force which assignments are additive.
  auto L = fixtures::fig1();
  auto idx = [&](const char* n) { return L.index(n); };
  for (int k = 0; k <= 10; ++k) {
    Rational t(k, 10);
    Measure mu(L.size(), R0);
    mu[idx("1")] = R1;
    mu[idx("p")] = mu[idx("[]p")] = mu[idx("<>p")] = t;
    mu[idx("~p")] = mu[idx("[]~p")] = mu[idx("<>~p")] = R1 - t;
    mu[idx("[]p\\/[]~p")] = R1;
    CHECK(additive(L, mu));
    CHECK_FALSE(check_measure(L, mu));
    CHECK(is_introspective(L, mu) == (k == 0 || k == 10));
  }
}

TEST_CASE("complement additivity is enforced") {
  auto L = fixtures::fig1();
  auto mu = fixtures::fig1_measure();
  mu[L.index("~p")] = R(2, 10);
  REQUIRE(check_measure(L, mu));
  auto T = fixtures::two();
  CHECK_FALSE(check_measure(T, {R0, R1}));
  CHECK(check_measure(T, {R0, R(1, 2)}));
  CHECK_THROWS_AS(check_measure(T, {R0, R(3, 2)}), ValidationError);
  CHECK_THROWS_AS(check_measure(T, {R1}), ValidationError);
}

TEST_CASE("measure laws on mixtures of worlds") {
  std::mt19937 rng(21);
  for (const auto& F : {fixtures::scale().frame, fixtures::chain(5), fixtures::conditional().frame}) {
    auto P = proposition_lattice(F);
    const auto& L = P.lattice;
    Mask ws = worlds(F);
    std::vector<int> wl;
    for (int x = 0; x < F.size(); ++x)
      if (oracle::in(ws, x)) wl.push_back(x);
    REQUIRE(wl.size() >= 2);
    for (int trial = 0; trial < 20; ++trial) {
      int a = static_cast<int>(rng() % 9) + 1;
      Measure mu = mixture(P, {{wl[0], R(a, 10)}, {wl[1], R(10 - a, 10)}});
      CHECK(additive(L, mu));
      CHECK_FALSE(check_measure(L, mu));
      for (int x = 0; x < L.size(); ++x) {
        CHECK(mu[L.neg(x)] == R1 - mu[x]);
        for (int y = 0; y < L.size(); ++y)
          if (L.leq(x, y)) CHECK(mu[x] <= mu[y]);
      }
      // random perturbations are caught exactly when additivity breaks
      Measure bad = mu;
      bad[rng() % bad.size()] = R(static_cast<std::int64_t>(rng() % 11), 10);
      CHECK(check_measure(L, bad).has_value() == !additive(L, bad));
    }
  }
}

TEST_CASE("total probability") {
  auto F = fixtures::conditional().frame;
  auto P = proposition_lattice(F);
  const auto& L = P.lattice;
  Measure mu = mixture(P, {{F.index("x1"), R(1, 4)}, {F.index("x5"), R(3, 4)}});
  REQUIRE_FALSE(check_measure(L, mu));
  // inside the Boolean block the law holds
  const auto& block = L.bool_block();
  int checked = 0;
  for (int a : block)
    for (int b : block) {
      if (mu[b] == R0 || mu[L.neg(b)] == R0) continue;
      auto g = total_probability_gap(L, mu, a, b);
      CHECK(g.first == g.second);
      ++checked;
    }
  CHECK(checked > 0);
  int p = P.element_of(F.parse_set({"x1", "x2"}));
  auto g = total_probability_gap(L, mu, p, p);
  CHECK(g.first == mu[p]);
  CHECK(g.second == mu[p]);
  CHECK_THROWS_AS(total_probability_gap(L, mu, p, L.top()), ValidationError);
}

TEST_CASE("two incompatible worlds") {
  auto F = fixtures::two_worlds();
  auto P = proposition_lattice(F);
  auto PA = fixtures::two_worlds_assignment(P);
  CHECK_FALSE(check_assignment(F, P, PA));
  for (auto c : all_prob_conditions()) CHECK_MESSAGE(!check_prob_condition(F, P, PA, c), to_string(c));
  for (Mask A : P.sets) {
    CHECK(geq_set(P, PA, A, A) == F.all());
    for (Mask B : P.sets) {
      CHECK(is_regular(F, geq_set(P, PA, A, B)));
      CHECK(is_regular(F, gt_set(P, PA, A, B)));
    }
    CHECK((A & geq_set(P, PA, neg_set(F, A), A)) == 0);
    CHECK((box_set(F, A) & ~geq_set(P, PA, A, F.all())) == 0);
    CHECK((geq_set(P, PA, A, F.all()) & ~box_set(F, A)) == 0);
    for (Mask B : P.sets) {
      CHECK((A & gt_set(P, PA, B, A)) == 0);
      CHECK(join_set(F, geq_set(P, PA, A, B), geq_set(P, PA, B, A)) == F.all());
    }
  }
}

TEST_CASE("comparisons on the scale") {
  auto M = fixtures::scale();
  const auto& F = M.frame;
  auto P = proposition_lattice(F);
  auto PA = fixtures::scale_assignment(P);
  CHECK_FALSE(check_assignment(F, P, PA));
  for (Mask A : P.sets)
    for (Mask B : P.sets) CHECK((gt_set(P, PA, A, B) & ~geq_set(P, PA, A, B)) == 0);
  // the constructed assignment is not P-regular, and the comparison sets show it
  CHECK(check_prob_condition(F, P, PA, ProbCondition::PRegularity));
  int irregular = 0;
  for (Mask A : P.sets)
    for (Mask B : P.sets) irregular += !is_regular(F, geq_set(P, PA, A, B));
  CHECK(irregular > 0);
  // every valid measure here gives the middle proposition probability zero,
  // so x3 cannot be certain of its own information state
  auto w = check_prob_condition(F, P, PA, ProbCondition::AllOne);
  REQUIRE(w);
  CHECK(F.name(w->points.front()) == "x3");
  w = check_prob_condition(F, P, PA, ProbCondition::KnowabilityP);
  REQUIRE(w);
  CHECK(F.name(w->points.front()) == "x3");
  CHECK_FALSE(check_prob_condition(F, P, PA, ProbCondition::Sharp));

  auto bad = PA;
  bad.at[0].clear();
  CHECK(check_assignment(F, P, bad));
}

TEST_CASE("no sharp three-valued assignment on the scale is P-regular") {
  // Valid measures on the scale lattice are fixed by t = mu(p). Try every
  // single-measure assignment with t in {0, 1/2, 1}.
  auto F = fixtures::scale().frame;
  auto P = proposition_lattice(F);
  const auto& L = P.lattice;
  int p = P.element_of(F.parse_set({"x1", "x2"}));
  auto measure = [&](Rational t) {
    Measure mu(L.size(), R0);
    for (int a = 0; a < L.size(); ++a) {
      if (L.leq(L.neg(p), a) && L.leq(p, a)) mu[a] = R1;
      else if (L.leq(p, a) && L.leq(a, L.dia(p))) mu[a] = t;
      else if (L.leq(L.neg(p), a) && L.leq(a, L.dia(L.neg(p)))) mu[a] = R1 - t;
      else if (L.leq(L.box(p), a) && L.leq(L.box(L.neg(p)), a)) mu[a] = R1;
      else if (L.leq(L.box(p), a)) mu[a] = t;
      else if (L.leq(L.box(L.neg(p)), a)) mu[a] = R1 - t;
    }
    return mu;
  };
  const std::vector<Measure> ms{measure(R0), measure(R(1, 2)), measure(R1)};
  for (const auto& mu : ms) REQUIRE(additive(L, mu));
  int regular = 0, total = 0;
  std::vector<int> pick(F.size(), 0);
  for (;;) {
    ProbAssignment PA;
    for (int x = 0; x < F.size(); ++x) PA.at.push_back({ms[pick[x]]});
    ++total;
    regular += !check_prob_condition(F, P, PA, ProbCondition::PRegularity);
    int k = 0;
    while (k < F.size() && ++pick[k] == 3) pick[k++] = 0;
    if (k == F.size()) break;
  }
  CHECK(total == 2187);
  // only the constant assignments survive
  CHECK(regular == 3);
}

TEST_CASE("condition names round trip") {
  for (auto c : all_prob_conditions()) CHECK(prob_condition_from_string(to_string(c)) == c);
}

}  // TEST_SUITE
