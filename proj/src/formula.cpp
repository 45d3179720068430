#include "orth/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

#include "orth/error.hpp"

namespace orth {

struct Formula::Node {
  Kind kind;
  std::string name;
  // Null handles for leaves; never dereferenced there.
  Formula a{std::shared_ptr<const Node>()}, b{std::shared_ptr<const Node>()};
  std::size_t hash = 0;
  std::size_t size = 1;
  int depth = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const std::shared_ptr<const Formula::Node>& bot_node() {
  static const auto n = [] {
    auto p = std::make_shared<Formula::Node>();
    p->kind = Kind::Bot;
    p->hash = mix(0, static_cast<std::size_t>(Kind::Bot));
    return std::shared_ptr<const Formula::Node>(p);
  }();
  return n;
}

}  // namespace

const char* to_string(Fragment f) {
  switch (f) {
    case Fragment::Boolean: return "Boolean";
    case Fragment::Modal: return "Modal";
    case Fragment::Conditional: return "Conditional";
  }
  return "?";
}

Formula::Formula() : p_(bot_node()) {}

struct FormulaFactory {
  static Formula make(Kind k, std::string name, const Formula* a, const Formula* b);
};

static Formula make(Kind k, std::string name, const Formula* a, const Formula* b) {
  return FormulaFactory::make(k, std::move(name), a, b);
}

Formula Formula::atom(const std::string& name) { return make(Kind::Atom, name, nullptr, nullptr); }
Formula Formula::bool_atom(const std::string& name) {
  return make(Kind::BoolAtom, name, nullptr, nullptr);
}
Formula Formula::bot() { return Formula(); }
Formula Formula::top() { return make(Kind::Top, "", nullptr, nullptr); }
Formula Formula::neg(const Formula& a) { return make(Kind::Neg, "", &a, nullptr); }
Formula Formula::conj(const Formula& a, const Formula& b) { return make(Kind::And, "", &a, &b); }
Formula Formula::box(const Formula& a) { return make(Kind::Box, "", &a, nullptr); }
Formula Formula::cond(const Formula& a, const Formula& b) { return make(Kind::Cond, "", &a, &b); }
Formula Formula::disj(const Formula& a, const Formula& b) { return neg(conj(neg(a), neg(b))); }
Formula Formula::dia(const Formula& a) { return neg(box(neg(a))); }

Formula FormulaFactory::make(Kind k, std::string name, const Formula* a, const Formula* b) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = k;
  n->name = std::move(name);
  std::size_t h = mix(0, static_cast<std::size_t>(k));
  h = mix(h, std::hash<std::string>{}(n->name));
  if (a) {
    n->a = *a;
    h = mix(h, a->hash());
    n->size += a->size();
    n->depth = std::max(n->depth, a->depth() + 1);
  }
  if (b) {
    n->b = *b;
    h = mix(h, b->hash());
    n->size += b->size();
    n->depth = std::max(n->depth, b->depth() + 1);
  }
  n->hash = h;
  return Formula(std::shared_ptr<const Formula::Node>(n));
}

Kind Formula::kind() const { return p_->kind; }
const std::string& Formula::name() const { return p_->name; }
const Formula& Formula::left() const { return p_->a; }
const Formula& Formula::right() const { return p_->b; }
std::size_t Formula::hash() const { return p_->hash; }
std::size_t Formula::size() const { return p_->size; }
int Formula::depth() const { return p_->depth; }

bool Formula::is_disj() const {
  return kind() == Kind::Neg && left().kind() == Kind::And && left().left().kind() == Kind::Neg &&
         left().right().kind() == Kind::Neg;
}

bool Formula::is_dia() const {
  return kind() == Kind::Neg && left().kind() == Kind::Box && left().left().kind() == Kind::Neg;
}

bool operator==(const Formula& x, const Formula& y) {
  if (x.p_ == y.p_) return true;
  if (x.hash() != y.hash() || x.kind() != y.kind() || x.size() != y.size()) return false;
  if (x.name() != y.name()) return false;
  switch (x.kind()) {
    case Kind::Neg:
    case Kind::Box: return x.left() == y.left();
    case Kind::And:
    case Kind::Cond: return x.left() == y.left() && x.right() == y.right();
    default: return true;
  }
}

bool operator<(const Formula& x, const Formula& y) {
  if (x.p_ == y.p_) return false;
  if (x.size() != y.size()) return x.size() < y.size();
  if (x.kind() != y.kind()) return x.kind() < y.kind();
  if (x.name() != y.name()) return x.name() < y.name();
  if (x.is_unary()) return x.left() < y.left();
  if (x.is_binary()) {
    if (x.left() != y.left()) return x.left() < y.left();
    return x.right() < y.right();
  }
  return false;
}

// ---------------------------------------------------------------- printing

namespace {

struct Symbols {
  const char *neg, *conj, *disj, *imp, *box, *dia, *bot, *top;
};

const Symbols kAscii{"~", " & ", " \\/ ", " -> ", "[]", "<>", "bot", "top"};
const Symbols kUnicode{"¬", " ∧ ", " ∨ ", " → ", "□", "◇", "⊥", "⊤"};

// Levels: 1 implication, 2 disjunction, 3 conjunction, 4 unary/atomic.
int level(const Formula& f) {
  if (f.kind() == Kind::Cond) return 1;
  if (f.is_disj()) return 2;
  if (f.kind() == Kind::And) return 3;
  return 4;
}

void emit(const Formula& f, const Symbols& s, std::string& out);

void emit_at(const Formula& f, int min_level, const Symbols& s, std::string& out) {
  if (level(f) < min_level) {
    out += '(';
    emit(f, s, out);
    out += ')';
  } else {
    emit(f, s, out);
  }
}

void emit(const Formula& f, const Symbols& s, std::string& out) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::BoolAtom: out += f.name(); return;
    case Kind::Bot: out += s.bot; return;
    case Kind::Top: out += s.top; return;
    case Kind::Box:
      out += s.box;
      emit_at(f.left(), 4, s, out);
      return;
    case Kind::And:
      emit_at(f.left(), 3, s, out);
      out += s.conj;
      emit_at(f.right(), 4, s, out);
      return;
    case Kind::Cond:
      emit_at(f.left(), 2, s, out);
      out += s.imp;
      emit_at(f.right(), 1, s, out);
      return;
    case Kind::Neg:
      if (f.is_disj()) {
        emit_at(f.left().left().left(), 2, s, out);
        out += s.disj;
        emit_at(f.left().right().left(), 3, s, out);
      } else if (f.is_dia()) {
        out += s.dia;
        emit_at(f.left().left().left(), 4, s, out);
      } else {
        out += s.neg;
        emit_at(f.left(), 4, s, out);
      }
      return;
  }
}

}  // namespace

std::string print(const Formula& f, Style style) {
  std::string out;
  emit(f, style == Style::Ascii ? kAscii : kUnicode, out);
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

enum class Tok { Ident, Bot, Top, Not, And, Or, Imp, Box, Dia, LParen, RParen, End };

struct Token {
  Tok tok;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](const char* lit) { return s.compare(i, std::char_traits<char>::length(lit), lit) == 0; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string w = s.substr(i, j - i);
      i = j;
      if (w == "bot") out.push_back({Tok::Bot, w, at});
      else if (w == "top") out.push_back({Tok::Top, w, at});
      else out.push_back({Tok::Ident, w, at});
      continue;
    }
    struct Lit {
      const char* text;
      Tok tok;
    };
    static const Lit lits[] = {
        {"->", Tok::Imp}, {"\\/", Tok::Or},  {"[]", Tok::Box},    {"<>", Tok::Dia},
        {"~", Tok::Not},  {"&", Tok::And},   {"(", Tok::LParen},  {")", Tok::RParen},
        {"¬", Tok::Not},  {"∧", Tok::And},   {"∨", Tok::Or},      {"→", Tok::Imp},
        {"□", Tok::Box},  {"◇", Tok::Dia},   {"◊", Tok::Dia},     {"⊥", Tok::Bot},
        {"⊤", Tok::Top},
    };
    bool hit = false;
    for (const auto& l : lits) {
      if (starts(l.text)) {
        out.push_back({l.tok, l.text, at});
        i += std::char_traits<char>::length(l.text);
        hit = true;
        break;
      }
    }
    if (!hit) throw ParseError("unexpected character '" + s.substr(i, 1) + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::set<std::string>& bools) : t_(std::move(toks)), bools_(bools) {}

  Formula run() {
    Formula f = imp();
    if (peek().tok == Tok::RParen) throw ParseError("unbalanced ')'", peek().pos);
    if (peek().tok != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return t_[k_]; }
  Token next() { return t_[k_++]; }

  Formula imp() {
    Formula a = disj();
    if (peek().tok == Tok::Imp) {
      next();
      return Formula::cond(a, imp());
    }
    return a;
  }

  Formula disj() {
    Formula a = conj();
    while (peek().tok == Tok::Or) {
      next();
      a = Formula::disj(a, conj());
    }
    return a;
  }

  Formula conj() {
    Formula a = unary();
    while (peek().tok == Tok::And) {
      next();
      a = Formula::conj(a, unary());
    }
    return a;
  }

  Formula unary() {
    Token t = next();
    switch (t.tok) {
      case Tok::Not: return Formula::neg(unary());
      case Tok::Box: return Formula::box(unary());
      case Tok::Dia: return Formula::dia(unary());
      case Tok::Bot: return Formula::bot();
      case Tok::Top: return Formula::top();
      case Tok::Ident: return bools_.count(t.text) ? Formula::bool_atom(t.text) : Formula::atom(t.text);
      case Tok::LParen: {
        Formula f = imp();
        if (peek().tok != Tok::RParen) throw ParseError("unbalanced '(' opened", t.pos);
        next();
        return f;
      }
      case Tok::End: throw ParseError("unexpected end of input", t.pos);
      default: throw ParseError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> t_;
  const std::set<std::string>& bools_;
  std::size_t k_ = 0;
};

}  // namespace

Formula parse(const std::string& text, const std::set<std::string>& bool_atoms) {
  return Parser(lex(text), bool_atoms).run();
}

// ------------------------------------------------------------ inspection

Fragment classify(const Formula& f, const std::set<std::string>& bool_atoms) {
  bool has_box = false, has_cond = false, all_bool = true;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Atom:
        if (!bool_atoms.count(g.name())) all_bool = false;
        break;
      case Kind::Box: has_box = true; break;
      case Kind::Cond: has_cond = true; break;
      default: break;
    }
    if (g.is_unary()) walk(g.left());
    if (g.is_binary()) {
      walk(g.left());
      walk(g.right());
    }
  };
  walk(f);
  if (has_cond) return Fragment::Conditional;
  if (!has_box && all_bool) return Fragment::Boolean;
  return Fragment::Modal;
}

bool is_boolean(const Formula& f, const std::set<std::string>& bool_atoms) {
  return classify(f, bool_atoms) == Fragment::Boolean;
}

std::vector<Formula> subformula_closure(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (seen.count(g)) return;
    if (g.is_unary()) walk(g.left());
    if (g.is_binary()) {
      walk(g.left());
      walk(g.right());
    }
    if (seen.insert(g).second) out.push_back(g);
  };
  walk(f);
  return out;
}

std::vector<std::string> atoms(const std::vector<Formula>& fs) {
  std::vector<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is_atomic()) {
      if (std::find(out.begin(), out.end(), g.name()) == out.end()) out.push_back(g.name());
      return;
    }
    if (g.is_unary()) walk(g.left());
    if (g.is_binary()) {
      walk(g.left());
      walk(g.right());
    }
  };
  for (const auto& f : fs) walk(f);
  return out;
}

std::vector<std::string> atoms(const Formula& f) { return atoms(std::vector<Formula>{f}); }

std::set<std::string> bool_atom_names(const Formula& f) {
  std::set<std::string> out;
  for (const auto& g : subformula_closure(f))
    if (g.kind() == Kind::BoolAtom) out.insert(g.name());
  return out;
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& sub) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::BoolAtom: {
      auto it = sub.find(f.name());
      return it == sub.end() ? f : it->second;
    }
    case Kind::Neg: return Formula::neg(substitute(f.left(), sub));
    case Kind::Box: return Formula::box(substitute(f.left(), sub));
    case Kind::And: return Formula::conj(substitute(f.left(), sub), substitute(f.right(), sub));
    case Kind::Cond: return Formula::cond(substitute(f.left(), sub), substitute(f.right(), sub));
    default: return f;
  }
}

Formula conj_all(const std::vector<Formula>& parts) {
  Formula acc = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conj(acc, parts[i]);
  return acc;
}

std::vector<Formula> split_conj(const Formula& f, std::size_t n) {
  std::vector<Formula> rev;
  Formula cur = f;
  while (rev.size() + 1 < n) {
    if (cur.kind() != Kind::And) return {};
    rev.push_back(cur.right());
    cur = cur.left();
  }
  rev.push_back(cur);
  return {rev.rbegin(), rev.rend()};
}

}  // namespace orth
