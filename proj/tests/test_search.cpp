#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "orth/error.hpp"
#include "orth/fixtures.hpp"
#include "orth/proof.hpp"
#include "orth/search.hpp"

using namespace orth;

namespace {

int edges(int n) { return n * (n - 1) / 2; }

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<Mask> compat_of(const Frame& F) {
  std::vector<Mask> g;
  for (int x = 0; x < F.size(); ++x) g.push_back(F.compat_mask(x));
  return g;
}

// Labeled count: all graphs on n points times all total i passing the
// epistemic definitions.
std::uint64_t labeled_epistemic(int n) {
  std::uint64_t total = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << edges(n)); ++code) {
    Frame F = oracle::frame_of(oracle::graph_from_code(n, code));
    std::vector<int> i(n, 0);
    for (;;) {
      for (int x = 0; x < n; ++x) F.set_i(x, i[x]);
      total += oracle::epistemic(F);
      int k = 0;
      while (k < n && ++i[k] == n) i[k++] = 0;
      if (k == n) break;
    }
  }
  return total;
}

SearchSpec goal_spec(const std::string& g, int max_size) {
  SearchSpec s;
  s.goal = parse_sequent(g);
  s.max_size = max_size;
  return s;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("graph classes against brute force") {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::uint64_t> classes;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << edges(n)); ++code)
      classes.insert(oracle::min_code(oracle::graph_from_code(n, code)));
    auto reps = canonical_graphs(n);
    CHECK(reps.size() == classes.size());
    std::set<std::uint64_t> seen;
    for (const auto& g : reps) seen.insert(oracle::min_code(g));
    CHECK(seen == classes);
  }
  CHECK(canonical_graphs(6).size() == 156);
  CHECK(canonical_graphs(7).size() == 1044);
}

TEST_CASE("orbit counting") {
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t labeled = 0;
    for (const auto& g : canonical_graphs(n)) {
      auto aut = automorphisms(g);
      REQUIRE(!aut.empty());
      CHECK(factorial(n) % aut.size() == 0);
      labeled += factorial(n) / aut.size();
    }
    CHECK(labeled == (std::uint64_t{1} << edges(n)));
  }
}

TEST_CASE("small enumerations") {
  CHECK(enumerate_frames(FrameClass::Compatibility, 1).size() == 1);
  auto two = enumerate_frames(FrameClass::Compatibility, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].compat(0, 1) != two[1].compat(0, 1));
  CHECK(enumerate_frames(FrameClass::Epistemic, 3).size() == 12);
  CHECK(enumerate_frames(FrameClass::Epistemic, 4).size() == 46);
  CHECK_THROWS_AS(enumerate_frames(FrameClass::Epistemic, size_cap(FrameClass::Epistemic) + 1), Error);
  for (const auto& F : enumerate_frames(FrameClass::Epistemic, 4)) {
    CHECK(oracle::epistemic(F));
    CHECK_FALSE(check_epistemic(F));
  }
}

TEST_CASE("epistemic pruning loses nothing") {
  for (int n = 1; n <= 4; ++n) {
    std::map<std::vector<Mask>, std::vector<Frame>> by_graph;
    for (auto& F : enumerate_frames(FrameClass::Epistemic, n)) by_graph[compat_of(F)].push_back(F);
    std::uint64_t total = 0;
    for (const auto& [g, frames] : by_graph) {
      auto aut = automorphisms(g);
      std::uint64_t on_graph = 0;
      std::set<std::vector<int>> reps;
      for (const auto& F : frames) {
        std::set<std::vector<int>> orbit;
        for (const auto& s : aut) {
          std::vector<int> j(n);
          for (int x = 0; x < n; ++x) j[s[x]] = s[F.i(x)];
          orbit.insert(j);
        }
        std::vector<int> i(n);
        for (int x = 0; x < n; ++x) i[x] = F.i(x);
        CHECK(*orbit.begin() == i);  // the least member is the one kept
        on_graph += orbit.size();
      }
      total += on_graph * (factorial(n) / aut.size());
    }
    CHECK(total == labeled_epistemic(n));
  }
}

TEST_CASE("diamond p does not entail p: minimal size") {
  auto r = find_countermodel(goal_spec("<>p |- p", 7));
  REQUIRE(r.status == SearchResult::Status::Found);
  const Model& M = *r.model;
  CHECK(M.frame.size() == 5);
  CHECK(oracle::epistemic(M.frame));
  CHECK(oracle::forces(M, r.point, parse("<>p")));
  CHECK_FALSE(oracle::forces(M, r.point, parse("p")));
  CHECK(oracle::regular(M.frame, M.valuation.at("p")));
  REQUIRE(r.log.size() == 5);
  CHECK(r.log[3].frames == 46);

  // nothing smaller, by exhaustive labeled enumeration
  for (int n = 1; n <= 4; ++n) {
    bool found = false;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << edges(n)) && !found; ++code) {
      Frame F = oracle::frame_of(oracle::graph_from_code(n, code));
      auto rs = oracle::regular_sets(F);
      std::vector<int> i(n, 0);
      for (;;) {
        for (int x = 0; x < n; ++x) F.set_i(x, i[x]);
        if (oracle::epistemic(F))
          for (Mask A : rs) {
            Model W{F, {{"p", A}}, {}};
            Mask dia = oracle::ext(W, parse("<>p"));
            if (dia & ~A) found = true;
          }
        int k = 0;
        while (k < n && ++i[k] == n) i[k++] = 0;
        if (k == n || found) break;
      }
    }
    CHECK_MESSAGE(!found, n);
  }

  // the Scale itself is a countermodel
  CHECK(entails_on_frame(fixtures::scale().frame, parse("<>p"), parse("p")));
}

TEST_CASE("Wittgenstein's law has no small countermodel") {
  auto r = find_countermodel(goal_spec("~p & <>p |- bot", 5));
  CHECK(r.status == SearchResult::Status::NoneUpToBound);
  CHECK_FALSE(r.model);
  REQUIRE(r.log.size() == 5);
  std::uint64_t frames = 0;
  for (const auto& l : r.log) frames += l.frames;
  CHECK(frames == 1 + 4 + 12 + 46 + 174);
}

TEST_CASE("distributivity schema") {
  SearchSpec s;
  s.schema = *find_principle("Distributivity");
  s.max_size = 6;
  auto r = find_countermodel(s);
  REQUIRE(r.status == SearchResult::Status::Found);
  CHECK(r.model->frame.size() == 4);
  CHECK(verify_principle(r.model->frame, *s.schema));
  // and no epistemic frame of size 3 or less refutes it
  for (int n = 1; n <= 3; ++n)
    for (const auto& F : enumerate_frames(FrameClass::Epistemic, n)) CHECK_FALSE(verify_principle(F, *s.schema));
}

TEST_CASE("results do not depend on the thread count") {
  auto a = goal_spec("[]p |- [][]p", 7);
  auto b = a;
  b.threads = 3;
  auto ra = find_countermodel(a), rb = find_countermodel(b);
  REQUIRE(ra.status == SearchResult::Status::Found);
  REQUIRE(rb.status == SearchResult::Status::Found);
  CHECK(ra.point == rb.point);
  CHECK(ra.model->valuation == rb.model->valuation);
  CHECK(compat_of(ra.model->frame) == compat_of(rb.model->frame));
  for (int x = 0; x < ra.model->frame.size(); ++x) CHECK(ra.model->frame.i(x) == rb.model->frame.i(x));
  CHECK(ra.model->frame.size() == 7);

  HuntSpec h;
  h.max_size = 3;
  auto ha = qualified_collapse_hunt(h);
  h.threads = 2;
  auto hb = qualified_collapse_hunt(h);
  CHECK(ha.status == hb.status);
  CHECK(ha.point == hb.point);
}

TEST_CASE("budgets") {
  auto s = goal_spec("~p & <>p |- bot", 6);
  s.budget = 50;
  auto r = find_countermodel(s);
  CHECK(r.status == SearchResult::Status::BudgetExhausted);
  CHECK_FALSE(r.model);
  CHECK(std::string(to_string(r.status)) != std::string(to_string(SearchResult::Status::NoneUpToBound)));
}

TEST_CASE("qualified collapse hunt") {
  HuntSpec h;
  h.max_size = 3;
  auto r = qualified_collapse_hunt(h);
  REQUIRE(r.status == SearchResult::Status::Found);
  const Model& M = *r.model;
  CHECK(M.frame.size() == 2);
  CHECK(M.frame.has_selection());
  CHECK(oracle::forces(M, r.point, parse("psi & (psi -> <>(psi & phi))")));
  CHECK_FALSE(oracle::forces(M, r.point, parse("phi -> psi")));
  CHECK_FALSE(check_epistemic(M.frame));

  // with constraints, whatever comes back satisfies them
  h.principles = {"Identity", "Flat"};
  r = qualified_collapse_hunt(h);
  if (r.status == SearchResult::Status::Found) {
    CHECK_FALSE(check_condition(r.model->frame, FrameCondition::Id));
    CHECK_FALSE(check_condition(r.model->frame, FrameCondition::Flat));
    CHECK_FALSE(oracle::forces(*r.model, r.point, parse("phi -> psi")));
  }
  MESSAGE("hunt {Identity, Flat} up to 3: " << std::string(to_string(r.status)));
}

TEST_CASE("principle pairing names") {
  CHECK(paired_condition("Identity") == FrameCondition::Id);
  CHECK(paired_condition("16") == FrameCondition::Id);
  CHECK(paired_condition("Combine") == FrameCondition::Combine);
  CHECK(paired_condition("MustIfCombination") == FrameCondition::Combine);
  CHECK(paired_condition("Flattening") == FrameCondition::Flat);
  CHECK_FALSE(paired_condition("Distributivity"));
  for (auto c : selection_conditions()) CHECK(paired_condition(std::to_string(condition_number(c))) == c);
}

TEST_CASE("small ortholattices") {
  auto ls = small_ortholattices(8);
  for (std::size_t a = 0; a < ls.size(); ++a) {
    CHECK_FALSE(check_lattice(ls[a]));
    CHECK(ls[a].size() <= 8);
    for (std::size_t b = a + 1; b < ls.size(); ++b) CHECK_FALSE(iso_check(ls[a], ls[b]));
  }
  std::set<int> sizes;
  for (const auto& L : ls) sizes.insert(L.size());
  CHECK(sizes.count(2));
  CHECK(sizes.count(4));
  CHECK(sizes.count(6));
  CHECK(sizes.count(8));
  CHECK(!sizes.count(3));  // ortholattices pair elements with complements, so sizes are even
}

}  // TEST_SUITE
