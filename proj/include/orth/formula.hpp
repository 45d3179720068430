#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace orth {

enum class Kind : unsigned char { Atom, BoolAtom, Bot, Top, Neg, And, Box, Cond };

enum class Fragment { Boolean, Modal, Conditional };

const char* to_string(Fragment f);

// Immutable formula handle. Disjunction and diamond are not node kinds:
// disj() and dia() build their desugared forms directly.
class Formula {
 public:
  Formula();  // bot

  static Formula atom(const std::string& name);
  static Formula bool_atom(const std::string& name);
  static Formula bot();
  static Formula top();
  static Formula neg(const Formula& a);
  static Formula conj(const Formula& a, const Formula& b);
  static Formula box(const Formula& a);
  static Formula cond(const Formula& a, const Formula& b);
  static Formula disj(const Formula& a, const Formula& b);
  static Formula dia(const Formula& a);

  Kind kind() const;
  const std::string& name() const;
  const Formula& left() const;   // child of unary nodes, left of binary ones
  const Formula& right() const;
  std::size_t hash() const;
  std::size_t size() const;      // node count
  int depth() const;

  bool is_atomic() const { return kind() == Kind::Atom || kind() == Kind::BoolAtom; }
  bool is_unary() const { return kind() == Kind::Neg || kind() == Kind::Box; }
  bool is_binary() const { return kind() == Kind::And || kind() == Kind::Cond; }

  // Matches the sugar forms: ~(~a & ~b) and ~[]~a.
  bool is_disj() const;
  bool is_dia() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  // Total structural order, used for deterministic containers.
  friend bool operator<(const Formula& a, const Formula& b);

  struct Node;
  friend struct FormulaFactory;

 private:
  explicit Formula(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

enum class Style { Ascii, Unicode };

// Precedence-aware printing; ~(~a&~b) is shown as a \/ b, ~[]~a as <>a.
std::string print(const Formula& f, Style style = Style::Ascii);

// Parses the surface syntax. Identifiers listed in bool_atoms become BoolAtoms.
Formula parse(const std::string& text, const std::set<std::string>& bool_atoms = {});

Fragment classify(const Formula& f, const std::set<std::string>& bool_atoms = {});
bool is_boolean(const Formula& f, const std::set<std::string>& bool_atoms = {});

// Every subformula once, children before parents.
std::vector<Formula> subformula_closure(const Formula& f);

// Atom names (general and Boolean) in first-occurrence order.
std::vector<std::string> atoms(const Formula& f);
std::vector<std::string> atoms(const std::vector<Formula>& fs);
std::set<std::string> bool_atom_names(const Formula& f);

Formula substitute(const Formula& f, const std::map<std::string, Formula>& sub);

// Left-nested conjunction of a nonempty list.
Formula conj_all(const std::vector<Formula>& parts);
// Splits a left-nested conjunction into exactly n parts; empty on mismatch.
std::vector<Formula> split_conj(const Formula& f, std::size_t n);

}  // namespace orth
