#include "doctest.h"
#include "oracles.hpp"
#include "orth/error.hpp"
#include "orth/fixtures.hpp"
#include "orth/proof.hpp"
#include "orth/search.hpp"

using namespace orth;

namespace {

Step step(const std::string& seq, const std::string& by, std::vector<int> from = {},
          const std::set<std::string>& bools = {}) {
  return Step{parse_sequent(seq, bools), by, std::move(from), {}};
}

LogicProfile profile(Base b, std::set<std::string> toggles = {}) {
  LogicProfile p;
  p.base = b;
  p.toggles = std::move(toggles);
  return p;
}

std::set<std::string> all_conditional_principles() {
  std::set<std::string> ids;
  for (int n = 16; n <= 29; ++n)
    for (const auto* s : principles_numbered(n)) ids.insert(s->id);
  return ids;
}

Frame countermodel_frame(const std::string& goal, int max_size) {
  SearchSpec spec;
  spec.goal = parse_sequent(goal);
  spec.max_size = max_size;
  auto r = find_countermodel(spec);
  REQUIRE(r.status == SearchResult::Status::Found);
  return r.model->frame;
}

}  // namespace

TEST_SUITE("proof") {

TEST_CASE("disjunction introduction by hand") {
  Derivation d;
  d.steps = {step("~p & ~q |- ~p", "2"), step("~~p |- ~(~p & ~q)", "9", {0}), step("p |- ~~p", "4"),
             step("p |- p \\/ q", "7", {2, 1})};
  CHECK_FALSE(check_derivation(profile(Base::O), d));
  CHECK(print_sequent(d.steps.back().seq) == "p |- p \\/ q");
}

TEST_CASE("bad steps are located") {
  Derivation d;
  d.steps = {step("p & q |- q", "2")};
  auto e = check_derivation(profile(Base::O), d);
  REQUIRE(e);
  CHECK(e->step == 0);

  d.steps = {step("p |- p", "1"), step("~p |- ~p", "9", {1})};
  e = check_derivation(profile(Base::O), d);
  REQUIRE(e);
  CHECK(e->step == 1);

  d.steps = {step("p |- p", "Frobnicate")};
  REQUIRE(check_derivation(profile(Base::O), d));

  // box rules are not part of O
  d.steps = {step("[]p |- p", "13")};
  CHECK(check_derivation(profile(Base::O), d));
  CHECK_FALSE(check_derivation(profile(Base::EO), d));

  // wrong premise shape
  d.steps = {step("p & q |- p", "2"), step("[]q |- []p", "10", {0})};
  e = check_derivation(profile(Base::EO), d);
  REQUIRE(e);
  CHECK(e->step == 1);
}

TEST_CASE("Boolean distributivity is restricted") {
  Derivation d;
  d.steps = {step("a & (b \\/ c) |- (a & b) \\/ (a & c)", "15")};
  CHECK(check_derivation(profile(Base::EOplus), d));
  Derivation db;
  db.bool_atoms = {"a", "b", "c"};
  db.steps = {step("a & (b \\/ c) |- (a & b) \\/ (a & c)", "15", {}, db.bool_atoms)};
  CHECK_FALSE(check_derivation(profile(Base::EOplus), db));
  CHECK(check_derivation(profile(Base::EO), db));
  CHECK(check_derivation(profile(Base::O), db));
  // a Boolean instance with a modal conjunct is still rejected
  Derivation dm;
  dm.bool_atoms = {"a", "b"};
  dm.steps = {step("a & (b \\/ <>a) |- (a & b) \\/ (a & <>a)", "15", {}, dm.bool_atoms)};
  CHECK(check_derivation(profile(Base::EOplus), dm));
  // the unrestricted toggle is a separate rule
  Derivation df;
  df.steps = {step("a & (b \\/ c) |- (a & b) \\/ (a & c)", "FullDistributivity")};
  CHECK_FALSE(check_derivation(profile(Base::O, {"FullDistributivity"}), df));
  CHECK(check_derivation(profile(Base::EOplus), df));
}

TEST_CASE("profiles contain what they should") {
  auto o = profile(Base::O), eo = profile(Base::EO), eop = profile(Base::EOplus);
  auto cm = profile(Base::CondModal), ce = profile(Base::CondEpistemic);
  for (auto r : {"1", "5", "9", "bot", "top"}) CHECK((o.enables(r) && eo.enables(r) && ce.enables(r)));
  for (auto r : {"10", "11", "12", "13", "14"}) CHECK((!o.enables(r) && eo.enables(r) && eop.enables(r)));
  CHECK((!eo.enables("15") && eop.enables("15") && ce.enables("15")));
  CHECK((cm.enables("10") && !cm.enables("13") && !cm.enables("14") && cm.enables("15")));
  CHECK((cm.enables("Cong") && cm.enables("Nec") && cm.enables("RK3") && ce.enables("RK1")));
  CHECK_FALSE(eop.enables("Four"));
  CHECK(profile(Base::EO, {"Four"}).enables("Four"));
  CHECK_FALSE(ce.enables("Identity"));
  CHECK(profile(Base::CondEpistemic, {"Identity"}).enables("Identity"));
  for (auto b : {Base::O, Base::EO, Base::EOplus, Base::CondModal, Base::CondEpistemic})
    CHECK(base_from_string(to_string(b)) == b);
}

TEST_CASE("saturation") {
  auto g = parse_sequent("p & q |- q & p");
  auto d = saturate(profile(Base::O), g, make_bound({g.lhs, g.rhs}));
  REQUIRE(d);
  CHECK_FALSE(check_derivation(profile(Base::O), *d));
  CHECK(d->steps.back().seq.lhs == g.lhs);
  CHECK(d->steps.back().seq.rhs == g.rhs);

  auto w = parse_sequent("p & <>~p |- bot");
  d = saturate(profile(Base::EO), w, make_bound({w.lhs, w.rhs}));
  REQUIRE(d);
  CHECK_FALSE(check_derivation(profile(Base::EO), *d));
  CHECK_FALSE(saturate(profile(Base::O), w, make_bound({w.lhs, w.rhs})));

  auto dist = parse_sequent("p & (q \\/ r) |- (p & q) \\/ (p & r)");
  SaturateStats st;
  CHECK_FALSE(saturate(profile(Base::EOplus), dist, make_bound({dist.lhs, dist.rhs}), {}, &st));
  CHECK(st.universe > 0);
  // and the search module has a countermodel for it
  SearchSpec spec;
  spec.goal = dist;
  spec.cls = FrameClass::Compatibility;
  CHECK(find_countermodel(spec).status == SearchResult::Status::Found);
  // Boolean atoms make it provable
  std::set<std::string> B{"p", "q", "r"};
  auto bd = parse_sequent("p & (q \\/ r) |- (p & q) \\/ (p & r)", B);
  CHECK(saturate(profile(Base::EOplus), bd, make_bound({bd.lhs, bd.rhs}), B));

  CHECK_THROWS_AS(saturate(profile(Base::O), g, {parse("p")}), ValidationError);
}

TEST_CASE("bundled derivations") {
  auto names = bundled_names();
  CHECK(names.size() == 16);
  int found = 0;
  for (const auto& n : names) {
    const auto* b = find_bundled(n);
    if (!b) {
      MESSAGE("no bundled derivation for " << n);
      continue;
    }
    ++found;
    CAPTURE(n);
    CHECK_FALSE(check_derivation(b->profile, b->derivation));
    const auto& last = b->derivation.steps.back().seq;
    CHECK(last.lhs == b->goal.lhs);
    CHECK(last.rhs == b->goal.rhs);
  }
  CHECK(found >= 14);
  const auto* mct = find_bundled("ModalizedCautiousTransitivity");
  REQUIRE(mct);
  auto want = parse_sequent("(phi -> []psi) & ((phi & psi) -> chi) |- phi -> chi");
  CHECK(mct->goal.lhs == want.lhs);
  CHECK(mct->goal.rhs == want.rhs);
}

TEST_CASE("qualified collapse needs full distributivity") {
  const auto* qc = find_bundled("QualifiedCollapse");
  REQUIRE(qc);
  CHECK(qc->profile.toggles.count("FullDistributivity"));
  auto p = qc->profile;
  p.toggles.erase("FullDistributivity");
  CHECK(check_derivation(p, qc->derivation));
  std::vector<Formula> seeds = bundled_hints("QualifiedCollapse");
  seeds.push_back(qc->goal.lhs);
  seeds.push_back(qc->goal.rhs);
  CHECK_FALSE(saturate(p, qc->goal, make_bound(seeds), qc->derivation.bool_atoms));
}

TEST_CASE("soundness sweeps") {
  auto scale = fixtures::scale().frame;
  auto r = check_soundness(profile(Base::EOplus), scale, 200);
  CHECK(r.violations.empty());
  CHECK(r.checked > 0);
  CHECK(check_soundness(profile(Base::O), fixtures::cycle4(), 200).violations.empty());

  auto cond = fixtures::conditional().frame;
  auto ce = profile(Base::CondEpistemic, all_conditional_principles());
  r = check_soundness(ce, cond, 200);
  CHECK(r.violations.empty());

  // Four and Five hold on the Scale; small epistemic frames refute them
  CHECK(check_soundness(profile(Base::EOplus, {"Four", "Five"}), scale, 200).violations.empty());
  auto four = countermodel_frame("[]p |- [][]p", 7);
  CHECK(four.size() == 7);
  r = check_soundness(profile(Base::EOplus, {"Four"}), four, 400);
  REQUIRE_FALSE(r.violations.empty());
  for (const auto& v : r.violations) CHECK(v.rule == "Four");
  const auto& v = r.violations.front();
  Model M{four, v.valuation, {}};
  CHECK_FALSE(oracle::forces(M, v.point, parse("[][]phi")));

  auto five = countermodel_frame("<>p |- []<>p", 5);
  CHECK(five.size() == 5);
  r = check_soundness(profile(Base::EOplus, {"Five"}), five, 400);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations.front().rule == "Five");

  // MP-style principles fail on the conditional frame
  r = check_soundness(profile(Base::CondEpistemic, {"IfToOr"}), cond, 400);
  CHECK(r.violations.empty() == !verify_principle(cond, make_schema("x", 0, {}, {"phi -> psi |- ~phi \\/ psi"}, {})).has_value());
}

TEST_CASE("sequent syntax") {
  auto s = parse_sequent("p & q |- <>p");
  CHECK(s.lhs == parse("p & q"));
  CHECK(s.rhs == parse("<>p"));
  CHECK_THROWS_AS(parse_sequent("p & q"), ParseError);
  CHECK_THROWS_AS(parse_sequent("p |- "), ParseError);
  CHECK(parse_sequent(print_sequent(s)).lhs == s.lhs);
  auto u = parse_sequent("p ∧ q ⊢ ◇p");
  CHECK(u.lhs == s.lhs);
  CHECK(u.rhs == s.rhs);
}

}  // TEST_SUITE
