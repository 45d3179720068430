#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "orth/frame.hpp"
#include "orth/lattice.hpp"

namespace orth {

using Rational = boost::rational<std::int64_t>;

// Value per lattice element.
using Measure = std::vector<Rational>;

Rational parse_rational(const std::string& text);  // "n/d", "n" or a decimal like "0.9"
std::string format_rational(const Rational& r);

struct MeasureWitness {
  std::vector<int> elems;
  std::string what;
};

// mu(1) = 1 and mu(a \/ b) = mu(a) + mu(b) whenever a <= ~b. Throws
// ValidationError for values outside [0,1] or a size mismatch.
std::optional<MeasureWitness> check_measure(const Ortholattice& L, const Measure& mu);
// mu(a) > 0 implies mu(<>a) = 1; first offending element otherwise.
std::optional<int> introspection_failure(const Ortholattice& L, const Measure& mu);
bool is_introspective(const Ortholattice& L, const Measure& mu);

// (mu(a), mu(a|b) mu(b) + mu(a|~b) mu(~b)). Throws ValidationError when b or ~b
// has measure zero.
std::pair<Rational, Rational> total_probability_gap(const Ortholattice& L, const Measure& mu, int a, int b);

// Per possibility, a nonempty set of measures on the frame's proposition lattice.
struct ProbAssignment {
  std::vector<std::vector<Measure>> at;
};

Mask geq_set(const PropLattice& P, const ProbAssignment& PA, Mask A, Mask B);
Mask gt_set(const PropLattice& P, const ProbAssignment& PA, Mask A, Mask B);

enum class ProbCondition { PRegularity, KnowabilityP, Sharp, AllOne, SomeNonzero };
const char* to_string(ProbCondition c);
std::optional<ProbCondition> prob_condition_from_string(const std::string& s);
std::vector<ProbCondition> all_prob_conditions();

struct ProbWitness {
  std::vector<int> points;
  std::vector<Mask> sets;
  std::string what;
};

// Shape and measure validity of every member of every P_x.
std::optional<ProbWitness> check_assignment(const Frame& F, const PropLattice& P, const ProbAssignment& PA);
std::optional<ProbWitness> check_prob_condition(const Frame& F, const PropLattice& P, const ProbAssignment& PA,
                                                ProbCondition cond);

}  // namespace orth
