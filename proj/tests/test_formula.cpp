#include <random>

#include "doctest.h"
#include "orth/error.hpp"
#include "orth/formula.hpp"

using namespace orth;

namespace {

Formula random_formula(std::mt19937& rng, int depth, const std::set<std::string>& bools) {
  static const char* names[] = {"p", "q", "r", "a"};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  int k = pick(rng);
  auto sub = [&] { return random_formula(rng, depth - 1, bools); };
  switch (k) {
    case 0:
    case 1: {
      std::string n = names[rng() % 4];
      return bools.count(n) ? Formula::bool_atom(n) : Formula::atom(n);
    }
    case 2: return rng() % 2 ? Formula::bot() : Formula::top();
    case 3: return Formula::neg(sub());
    case 4: return Formula::conj(sub(), sub());
    case 5: return Formula::disj(sub(), sub());
    case 6: return Formula::box(sub());
    case 7: return Formula::dia(sub());
    case 8: return Formula::cond(sub(), sub());
    default: return Formula::neg(Formula::neg(sub()));
  }
}

}  // namespace

TEST_SUITE("formula") {
  TEST_CASE("sugar is desugared on parse") {
    CHECK(parse("p \\/ q") == Formula::neg(Formula::conj(Formula::neg(Formula::atom("p")), Formula::neg(Formula::atom("q")))));
    CHECK(parse("<>p") == Formula::neg(Formula::box(Formula::neg(Formula::atom("p")))));
    CHECK(parse("p \\/ q").kind() == Kind::Neg);
    CHECK(parse("p \\/ q").is_disj());
    CHECK(parse("<>p").is_dia());
  }

  TEST_CASE("precedence and associativity") {
    // -> is right associative and binds loosest; & binds tighter than \/.
    CHECK(parse("p -> q -> r") == parse("p -> (q -> r)"));
    CHECK(parse("p & q \\/ r") == parse("(p & q) \\/ r"));
    CHECK(parse("~p & q") == parse("(~p) & q"));
    CHECK(parse("[]p -> q") == parse("([]p) -> q"));
    CHECK(parse("p & q & r") == parse("(p & q) & r"));
  }

  TEST_CASE("unicode aliases") {
    CHECK(parse("¬p ∧ ◇q") == parse("~p & <>q"));
    CHECK(parse("□(p ∨ q) → ⊥") == parse("[](p \\/ q) -> bot"));
    CHECK(parse("⊤") == Formula::top());
    auto f = parse("~p & <>q -> []r");
    CHECK(parse(print(f, Style::Unicode)) == f);
  }

  TEST_CASE("print/parse round trip on random ASTs") {
    std::mt19937 rng(7);
    const std::set<std::string> bools{"a"};
    for (int k = 0; k < 500; ++k) {
      auto f = random_formula(rng, 4, bools);
      CAPTURE(print(f));
      CHECK(parse(print(f), bools) == f);
      CHECK(parse(print(f, Style::Unicode), bools) == f);
      // desugaring is idempotent: reparsing the printed form changes nothing
      CHECK(print(parse(print(f), bools)) == print(f));
    }
  }

  TEST_CASE("subformula closure is bounded by node count and lists children first") {
    std::mt19937 rng(11);
    for (int k = 0; k < 200; ++k) {
      auto f = random_formula(rng, 4, {});
      auto sub = subformula_closure(f);
      CHECK(sub.size() <= f.size());
      CHECK(sub.back() == f);
      for (std::size_t i = 0; i < sub.size(); ++i)
        for (std::size_t j = i + 1; j < sub.size(); ++j) CHECK(sub[i] != sub[j]);
    }
    CHECK(subformula_closure(parse("p & p")).size() == 2);
    CHECK(subformula_closure(parse("p \\/ q")).size() == 6);  // p q ~p ~q ~p&~q ~(..)
  }

  TEST_CASE("fragment classification") {
    const std::set<std::string> B{"a", "b"};
    CHECK(classify(parse("a & ~b", B), B) == Fragment::Boolean);
    CHECK(is_boolean(parse("a \\/ bot", B), B));
    CHECK(classify(parse("a & p", B), B) == Fragment::Modal);  // p is not a Boolean atom
    CHECK(classify(parse("[]a", B), B) == Fragment::Modal);
    CHECK(classify(parse("a -> b", B), B) == Fragment::Conditional);
    CHECK(classify(parse("top")) == Fragment::Boolean);
    CHECK(parse("a", B).kind() == Kind::BoolAtom);
    CHECK(parse("a").kind() == Kind::Atom);
  }

  TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_AS(parse("p & & q"), ParseError);
    CHECK_THROWS_AS(parse("(p"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("p q"), ParseError);
    CHECK_THROWS_AS(parse("1p"), ParseError);
    try {
      parse("p & & q");
    } catch (const ParseError& e) {
      CHECK(e.position() == 4);
    }
  }

  TEST_CASE("substitution and conjunction helpers") {
    auto f = parse("p & []q");
    auto g = substitute(f, {{"p", parse("r \\/ s")}});
    CHECK(g == parse("(r \\/ s) & []q"));
    auto c = conj_all({parse("p"), parse("q"), parse("r")});
    CHECK(c == parse("p & q & r"));
    auto parts = split_conj(c, 3);
    REQUIRE(parts.size() == 3);
    CHECK(parts[2] == parse("r"));
    CHECK(split_conj(c, 4).empty());
    CHECK(atoms(parse("q & p & q")) == std::vector<std::string>{"q", "p"});
  }
}
