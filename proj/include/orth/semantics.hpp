#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orth/formula.hpp"
#include "orth/frame.hpp"

namespace orth {

struct Model {
  Frame frame;
  std::map<std::string, Mask> valuation;
  std::set<std::string> bool_atoms;
};

// Valuation images regular; Boolean atoms inside the Boolean family
// ({empty, S} when none is declared); general atoms inside a declared
// proposition family.
void validate_model(const Model& M);

Mask extension(const Model& M, const Formula& f);
bool forces(const Model& M, int x, const Formula& f);

struct Countermodel {
  std::map<std::string, Mask> valuation;
  int point = -1;
};

constexpr std::uint64_t kDefaultInstanceCap = 1000000;

// Every valuation of the atoms of f and g (general atoms over the proposition
// family, Boolean atoms over the Boolean family) at every possibility. The
// first failure in lexicographic order is returned. Throws BudgetExhausted
// when the number of valuations exceeds cap.
std::optional<Countermodel> entails_on_frame(const Frame& F, const Formula& f, const Formula& g,
                                             const std::set<std::string>& bool_atoms = {},
                                             std::uint64_t cap = kDefaultInstanceCap);

struct Sequent {
  Formula lhs, rhs;
};

// A principle: if every premise holds everywhere then every conclusion holds
// everywhere. Metavariables are atoms of the formulas; the Boolean ones are
// listed in bool_vars.
struct PrincipleSchema {
  std::string id;
  int number = 0;  // 16..29 for conditional principles, 0 otherwise
  std::vector<std::string> vars;
  std::set<std::string> bool_vars;
  std::vector<Sequent> premises;
  std::vector<Sequent> conclusions;
};

PrincipleSchema make_schema(const std::string& id, int number, const std::vector<std::string>& premises,
                            const std::vector<std::string>& conclusions, const std::set<std::string>& bool_vars);

// Conditional principles 16..29 followed by Distributivity, WittgensteinLaw,
// DisjunctiveSyllogism, Orthomodularity and QualifiedCollapse.
const std::vector<PrincipleSchema>& principle_library();
const PrincipleSchema* find_principle(const std::string& id);
std::vector<const PrincipleSchema*> principles_numbered(int number);

struct PrincipleFailure {
  std::map<std::string, Mask> substitution;
  int point = -1;
  int conclusion = 0;  // which conclusion failed
};

// Semantic substitution of family members for metavariables.
std::optional<PrincipleFailure> verify_principle(const Frame& F, const PrincipleSchema& s,
                                                 std::uint64_t cap = kDefaultInstanceCap);

}  // namespace orth
