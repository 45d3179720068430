#include "orth/probability.hpp"

#include <cctype>

#include "orth/error.hpp"

namespace orth {

namespace {
// Mixed rational/int comparisons recurse forever under C++20 rewritten
// operators in some Boost versions, so compare against rationals only.
const Rational kZero(0), kOne(1);
}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string t;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw ValidationError("empty probability value");
  auto digits = [&](const std::string& s) {
    if (s.empty() || s.size() > 15) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::string n = t.substr(0, slash), d = t.substr(slash + 1);
    if (!digits(n) || !digits(d) || std::stoll(d) == 0) throw ValidationError("bad fraction: " + raw);
    return Rational(std::stoll(n), std::stoll(d));
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits(ip) || !digits(fp)) throw ValidationError("bad decimal: " + raw);
    std::int64_t den = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) den *= 10;
    return Rational(std::stoll(ip)) + Rational(std::stoll(fp), den);
  }
  if (!digits(t)) throw ValidationError("bad probability value: " + raw);
  return Rational(std::stoll(t));
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::optional<MeasureWitness> check_measure(const Ortholattice& L, const Measure& mu) {
  const int n = L.size();
  if (static_cast<int>(mu.size()) != n) throw ValidationError("measure has wrong number of values");
  for (int a = 0; a < n; ++a)
    if (mu[a] < kZero || mu[a] > kOne) throw ValidationError("measure value outside [0,1] at " + L.name(a));
  if (mu[L.top()] != kOne) return MeasureWitness{{L.top()}, "mu(1) != 1"};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (L.leq(a, L.neg(b)) && mu[L.join(a, b)] != mu[a] + mu[b])
        return MeasureWitness{{a, b}, "a <= ~b but mu(a \\/ b) != mu(a) + mu(b)"};
  return std::nullopt;
}

std::optional<int> introspection_failure(const Ortholattice& L, const Measure& mu) {
  for (int a = 0; a < L.size(); ++a)
    if (mu[a] > kZero && mu[L.dia(a)] != kOne) return a;
  return std::nullopt;
}

bool is_introspective(const Ortholattice& L, const Measure& mu) { return !introspection_failure(L, mu); }

std::pair<Rational, Rational> total_probability_gap(const Ortholattice& L, const Measure& mu, int a, int b) {
  int nb = L.neg(b);
  if (mu[b] == kZero || mu[nb] == kZero) throw ValidationError("conditioning on a measure-zero element");
  Rational given_b = mu[L.meet(a, b)] / mu[b];
  Rational given_nb = mu[L.meet(a, nb)] / mu[nb];
  return {mu[a], given_b * mu[b] + given_nb * mu[nb]};
}

namespace {

template <class Cmp>
Mask compare_set(const PropLattice& P, const ProbAssignment& PA, Mask A, Mask B, Cmp cmp) {
  int a = P.element_of(A), b = P.element_of(B);
  if (a < 0 || b < 0) throw ValidationError("comparison between non-propositions");
  Mask out = 0;
  for (std::size_t x = 0; x < PA.at.size(); ++x) {
    bool all = true;
    for (const auto& mu : PA.at[x]) all = all && cmp(mu[a], mu[b]);
    if (all) out |= bit(static_cast<int>(x));
  }
  return out;
}

}  // namespace

Mask geq_set(const PropLattice& P, const ProbAssignment& PA, Mask A, Mask B) {
  return compare_set(P, PA, A, B, [](const Rational& u, const Rational& v) { return u >= v; });
}

Mask gt_set(const PropLattice& P, const ProbAssignment& PA, Mask A, Mask B) {
  return compare_set(P, PA, A, B, [](const Rational& u, const Rational& v) { return u > v; });
}

const char* to_string(ProbCondition c) {
  switch (c) {
    case ProbCondition::PRegularity: return "PRegularity";
    case ProbCondition::KnowabilityP: return "KnowabilityP";
    case ProbCondition::Sharp: return "Sharp";
    case ProbCondition::AllOne: return "AllOne";
    case ProbCondition::SomeNonzero: return "SomeNonzero";
  }
  return "?";
}

std::vector<ProbCondition> all_prob_conditions() {
  return {ProbCondition::PRegularity, ProbCondition::KnowabilityP, ProbCondition::Sharp, ProbCondition::AllOne,
          ProbCondition::SomeNonzero};
}

std::optional<ProbCondition> prob_condition_from_string(const std::string& s) {
  for (auto c : all_prob_conditions())
    if (s == to_string(c)) return c;
  return std::nullopt;
}

std::optional<ProbWitness> check_assignment(const Frame& F, const PropLattice& P, const ProbAssignment& PA) {
  if (static_cast<int>(PA.at.size()) != F.size()) throw ValidationError("assignment needs one entry per possibility");
  for (int x = 0; x < F.size(); ++x) {
    if (PA.at[x].empty()) return ProbWitness{{x}, {}, "empty set of measures"};
    for (const auto& mu : PA.at[x])
      if (auto w = check_measure(P.lattice, mu)) {
        std::vector<Mask> sets;
        for (int e : w->elems) sets.push_back(P.sets[e]);
        return ProbWitness{{x}, sets, w->what};
      }
  }
  return std::nullopt;
}

std::optional<ProbWitness> check_prob_condition(const Frame& F, const PropLattice& P, const ProbAssignment& PA,
                                                ProbCondition cond) {
  const int n = F.size();
  if (static_cast<int>(PA.at.size()) != n) throw ValidationError("assignment needs one entry per possibility");
  const int m = P.lattice.size();
  auto some = [&](int x, auto&& pred) {
    for (const auto& mu : PA.at[x])
      if (pred(mu)) return true;
    return false;
  };
  auto elem = [&](Mask A) {
    int e = P.element_of(A);
    if (e < 0) throw ValidationError("set is not a proposition: " + F.set_name(A));
    return e;
  };
  switch (cond) {
    case ProbCondition::PRegularity:
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          for (int strict = 1; strict >= 0; --strict) {
            auto rel = [&](const Measure& mu) { return strict ? mu[a] < mu[b] : mu[a] <= mu[b]; };
            for (int x = 0; x < n; ++x) {
              if (!some(x, rel)) continue;
              bool ok = false;
              each(F.compat_mask(x), [&](int x1) {
                if (ok) return;
                bool all = true;
                each(F.compat_mask(x1), [&](int x2) { all = all && some(x2, rel); });
                ok = all;
              });
              if (!ok)
                return ProbWitness{{x}, {P.sets[a], P.sets[b]},
                                   strict ? "P-regularity fails for mu(A) < mu(B)" : "P-regularity fails for mu(A) <= mu(B)"};
            }
          }
      return std::nullopt;
    case ProbCondition::KnowabilityP:
      for (int x = 0; x < n; ++x) {
        int dx = elem(down_set(F, x));
        bool ok = false;
        for (int y = 0; y < n && !ok; ++y)
          ok = refines(F, y, x) && some(y, [&](const Measure& mu) { return mu[dx] == kOne; });
        if (!ok) return ProbWitness{{x}, {down_set(F, x)}, "no refinement y of x with mu(down x) = 1"};
      }
      return std::nullopt;
    case ProbCondition::Sharp:
      for (int x = 0; x < n; ++x)
        for (int x1 = 0; x1 < n; ++x1) {
          if (!F.compat(x, x1)) continue;
          bool ok = false;
          each(F.compat_mask(x1), [&](int x2) { ok = ok || PA.at[x2].size() == 1; });
          if (!ok) return ProbWitness{{x, x1}, {}, "no sharp possibility compatible with x'"};
        }
      return std::nullopt;
    case ProbCondition::AllOne:
      if (!F.has_i()) throw ValidationError("AllOne needs an information function");
      for (int x = 0; x < n; ++x) {
        if (F.i(x) < 0) continue;
        int d = elem(down_set(F, F.i(x)));
        for (const auto& mu : PA.at[x])
          if (mu[d] != kOne) return ProbWitness{{x}, {down_set(F, F.i(x))}, "mu(down i(x)) != 1"};
      }
      return std::nullopt;
    case ProbCondition::SomeNonzero:
      if (!F.has_i()) throw ValidationError("SomeNonzero needs an information function");
      for (int x = 0; x < n; ++x) {
        if (F.i(x) < 0) continue;
        for (int y = 0; y < n; ++y) {
          if (!F.compat(y, F.i(x))) continue;
          int d = elem(down_set(F, y));
          if (!some(x, [&](const Measure& mu) { return mu[d] > kZero; }))
            return ProbWitness{{x, y}, {down_set(F, y)}, "y compatible with i(x) but every mu(down y) = 0"};
        }
      }
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace orth
