#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orth/formula.hpp"
#include "orth/frame.hpp"
#include "orth/semantics.hpp"

namespace orth {

enum class Base { O, EO, EOplus, CondModal, CondEpistemic };
const char* to_string(Base b);
std::optional<Base> base_from_string(const std::string& s);

struct LogicProfile {
  Base base = Base::O;
  // Principle ids (principle_library ids, plus IfToOr, ModalizedImportExport,
  // FullDistributivity) and the optional Four / Five rules.
  std::set<std::string> toggles;
  int rk_cap = 4;

  bool enables(const std::string& rule) const;
};

// A rule is a schema over metavariables: premises above the line, one of the
// listed conclusions below. Metavariables in bool_vars only accept Boolean
// formulas.
struct Rule {
  std::string id;
  std::vector<Sequent> premises;
  std::vector<Sequent> conclusions;
  std::set<std::string> bool_vars;
};

// Every rule known to the checker, including RK instances up to arity 4
// (ids RK1..RK4; "RK" in a derivation means any arity up to the cap).
const std::vector<Rule>& rule_table();
const Rule* find_rule(const std::string& id);

struct Step {
  Sequent seq;
  std::string by;
  std::vector<int> from;
  std::map<std::string, Formula> subst;
};

struct Derivation {
  std::set<std::string> bool_atoms;
  std::vector<Step> steps;
};

struct StepError {
  int step = -1;
  std::string what;
};

// Checks every step; the last step is the derivation's conclusion.
std::optional<StepError> check_derivation(const LogicProfile& p, const Derivation& d);

// Subformula closure of the given formulas plus bot, top, []top, conjunctions
// with one conjunct double-negated, and one negation of everything.
std::vector<Formula> make_bound(const std::vector<Formula>& seeds);

struct SaturateStats {
  std::size_t universe = 0;
  std::size_t derived = 0;
  int rounds = 0;
};

// Forward closure of all rule applications whose formulas stay inside bound.
// Throws ValidationError if a side of the goal is not in bound. nullopt is
// "unknown", not a refutation.
std::optional<Derivation> saturate(const LogicProfile& p, const Sequent& goal, const std::vector<Formula>& bound,
                                   const std::set<std::string>& bool_atoms = {}, SaturateStats* stats = nullptr);

struct SoundnessViolation {
  std::string rule;
  std::map<std::string, Mask> valuation;
  int point = -1;
};

struct SoundnessReport {
  std::size_t checked = 0;
  std::vector<SoundnessViolation> violations;
};

// Samples random valuations of each enabled rule's metavariables from the
// frame's proposition family (Boolean ones from the Boolean family); a rule
// instance is violated when its premises hold everywhere but a conclusion
// fails somewhere. Deterministic for a given seed.
SoundnessReport check_soundness(const LogicProfile& p, const Frame& F, int samples, std::uint32_t seed = 20240601);

// Derivations shipped with the library.
struct BundledDerivation {
  std::string name;
  LogicProfile profile;
  Sequent goal;
  Derivation derivation;
};

// Disjunction introduction / elimination, the derived conditional principles
// and Qualified Collapse under full distributivity. Built once; the derived
// principles come from saturate with hint formulas that spell out the
// intermediate steps of their textbook proofs.
const std::vector<BundledDerivation>& bundled_derivations();
const BundledDerivation* find_bundled(const std::string& name);
// Every name bundled_derivations() is expected to contain, in order.
std::vector<std::string> bundled_names();

// Hint formulas used for a bundled derivation, exposed for the CLI and tests.
std::vector<Formula> bundled_hints(const std::string& name);

Sequent parse_sequent(const std::string& text, const std::set<std::string>& bool_atoms = {});
std::string print_sequent(const Sequent& s);

}  // namespace orth
