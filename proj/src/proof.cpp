#include "orth/proof.hpp"

#include <boost/dynamic_bitset.hpp>
#include <functional>
#include <random>
#include <unordered_map>

#include "orth/error.hpp"

namespace orth {

const char* to_string(Base b) {
  switch (b) {
    case Base::O: return "O";
    case Base::EO: return "EO";
    case Base::EOplus: return "EOplus";
    case Base::CondModal: return "CondModal";
    case Base::CondEpistemic: return "CondEpistemic";
  }
  return "?";
}

std::optional<Base> base_from_string(const std::string& s) {
  for (Base b : {Base::O, Base::EO, Base::EOplus, Base::CondModal, Base::CondEpistemic})
    if (s == to_string(b)) return b;
  return std::nullopt;
}

Sequent parse_sequent(const std::string& text, const std::set<std::string>& bool_atoms) {
  std::size_t pos = text.find("|-"), len = 2;
  if (pos == std::string::npos) {
    pos = text.find("⊢");
    len = std::char_traits<char>::length("⊢");
  }
  if (pos == std::string::npos) throw ParseError("sequent needs |-", 0);
  return {parse(text.substr(0, pos), bool_atoms), parse(text.substr(pos + len), bool_atoms)};
}

std::string print_sequent(const Sequent& s) { return print(s.lhs) + " |- " + print(s.rhs); }

namespace {

bool is_rk(const std::string& id, int* arity = nullptr) {
  if (id.size() != 3 || id.compare(0, 2, "RK") != 0 || id[2] < '1' || id[2] > '9') return false;
  if (arity) *arity = id[2] - '0';
  return true;
}

Rule make_rule(const std::string& id, const std::vector<std::string>& prem, const std::vector<std::string>& concl,
               const std::set<std::string>& bools = {}) {
  Rule r;
  r.id = id;
  r.bool_vars = bools;
  for (const auto& p : prem) r.premises.push_back(parse_sequent(p, bools));
  for (const auto& c : concl) r.conclusions.push_back(parse_sequent(c, bools));
  return r;
}

Rule rk_rule(int n) {
  std::string lhs, prem;
  for (int k = 1; k <= n; ++k) {
    std::string v = "psi" + std::to_string(k);
    lhs += k == 1 ? "(phi -> " + v + ")" : " & (phi -> " + v + ")";
    prem += k == 1 ? v : " & " + v;
  }
  return make_rule("RK" + std::to_string(n), {prem + " |- chi"}, {lhs + " |- phi -> chi"});
}

const std::set<std::string> kO{"1", "2", "3", "4", "5", "6", "7", "8", "9", "bot", "top"};
const std::set<std::string> kModal{"10", "11", "12"};
const std::set<std::string> kEpistemic{"13", "14"};

}  // namespace

bool LogicProfile::enables(const std::string& rule) const {
  if (rule == "hyp") return true;
  if (kO.count(rule)) return true;
  const bool cond = base == Base::CondModal || base == Base::CondEpistemic;
  if (kModal.count(rule)) return base != Base::O;
  if (kEpistemic.count(rule)) return base == Base::EO || base == Base::EOplus || base == Base::CondEpistemic;
  if (rule == "15") return base == Base::EOplus || cond;
  int n = 0;
  if (is_rk(rule, &n)) return cond && n <= rk_cap;
  if (rule == "Cong" || rule == "Nec") return cond;
  return toggles.count(rule) > 0;
}

const std::vector<Rule>& rule_table() {
  static const std::vector<Rule> table = [] {
    std::vector<Rule> t;
    t.push_back(make_rule("1", {}, {"phi |- phi"}));
    t.push_back(make_rule("2", {}, {"phi & psi |- phi"}));
    t.push_back(make_rule("3", {}, {"phi & psi |- psi"}));
    t.push_back(make_rule("4", {}, {"phi |- ~~phi"}));
    t.push_back(make_rule("5", {}, {"~~phi |- phi"}));
    t.push_back(make_rule("6", {}, {"phi & ~phi |- psi"}));
    t.push_back(make_rule("7", {"phi |- psi", "psi |- chi"}, {"phi |- chi"}));
    t.push_back(make_rule("8", {"phi |- psi", "phi |- chi"}, {"phi |- psi & chi"}));
    t.push_back(make_rule("9", {"phi |- psi"}, {"~psi |- ~phi"}));
    // bot and top are primitive constants, so their laws are stated directly.
    t.push_back(make_rule("bot", {}, {"bot |- phi"}));
    t.push_back(make_rule("top", {}, {"phi |- top"}));
    t.push_back(make_rule("10", {"phi |- psi"}, {"[]phi |- []psi"}));
    t.push_back(make_rule("11", {}, {"[]phi & []psi |- [](phi & psi)"}));
    t.push_back(make_rule("12", {}, {"chi |- []top"}));
    t.push_back(make_rule("13", {}, {"[]phi |- phi"}));
    t.push_back(make_rule("14", {}, {"~phi & <>phi |- bot"}));
    t.push_back(make_rule("15", {}, {"alpha & (beta \\/ gamma) |- (alpha & beta) \\/ (alpha & gamma)"},
                          {"alpha", "beta", "gamma"}));
    t.push_back(make_rule("Four", {}, {"[]phi |- [][]phi"}));
    t.push_back(make_rule("Five", {}, {"<>phi |- []<>phi"}));
    t.push_back(make_rule("Cong", {"phi |- psi", "psi |- phi"}, {"phi -> chi |- psi -> chi"}));
    t.push_back(make_rule("Nec", {"top |- psi"}, {"top |- phi -> psi"}));
    for (int n = 1; n <= 4; ++n) t.push_back(rk_rule(n));
    for (const auto& s : principle_library()) {
      Rule r;
      r.id = s.id;
      r.premises = s.premises;
      r.conclusions = s.conclusions;
      r.bool_vars = s.bool_vars;
      t.push_back(r);
    }
    t.push_back(make_rule("IfToOr", {}, {"phi -> psi |- ~phi \\/ psi"}));
    t.push_back(make_rule("ModalizedImportExport", {},
                          {"(phi -> <>(phi & psi)) & (phi -> (psi -> chi)) |- (phi -> <>(phi & psi)) & ((phi & psi) -> chi)",
                           "(phi -> <>(phi & psi)) & ((phi & psi) -> chi) |- (phi -> <>(phi & psi)) & (phi -> (psi -> chi))"}));
    t.push_back(make_rule("FullDistributivity", {}, {"phi & (psi \\/ chi) |- (phi & psi) \\/ (phi & chi)"}));
    return t;
  }();
  return table;
}

const Rule* find_rule(const std::string& id) {
  for (const auto& r : rule_table())
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

using Subst = std::map<std::string, Formula>;

bool match(const Formula& pat, const Formula& f, Subst& s) {
  switch (pat.kind()) {
    case Kind::Atom:
    case Kind::BoolAtom: {
      if (pat.kind() == Kind::BoolAtom && !is_boolean(f)) return false;
      auto it = s.find(pat.name());
      if (it != s.end()) return it->second == f;
      s.emplace(pat.name(), f);
      return true;
    }
    case Kind::Bot:
    case Kind::Top: return f.kind() == pat.kind();
    case Kind::Neg:
    case Kind::Box: return f.kind() == pat.kind() && match(pat.left(), f.left(), s);
    case Kind::And:
    case Kind::Cond:
      return f.kind() == pat.kind() && match(pat.left(), f.left(), s) && match(pat.right(), f.right(), s);
  }
  return false;
}

std::set<std::string> metavars(const Rule& r) {
  std::vector<Formula> all;
  for (const auto& q : r.premises) all.insert(all.end(), {q.lhs, q.rhs});
  for (const auto& q : r.conclusions) all.insert(all.end(), {q.lhs, q.rhs});
  auto v = atoms(all);
  return {v.begin(), v.end()};
}

std::optional<std::string> check_instance(const Rule& r, const Step& st, const std::vector<const Sequent*>& prem) {
  if (prem.size() != r.premises.size())
    return "rule " + r.id + " needs " + std::to_string(r.premises.size()) + " premises";
  Subst s;
  auto vars = metavars(r);
  for (const auto& [k, v] : st.subst) {
    if (!vars.count(k)) return "malformed substitution: " + k + " is not a metavariable of " + r.id;
    if (r.bool_vars.count(k) && !is_boolean(v)) return "substitution for " + k + " is not Boolean";
    s.emplace(k, v);
  }
  for (std::size_t k = 0; k < prem.size(); ++k)
    if (!match(r.premises[k].lhs, prem[k]->lhs, s) || !match(r.premises[k].rhs, prem[k]->rhs, s))
      return "premise " + std::to_string(k + 1) + " does not fit rule " + r.id;
  for (const auto& c : r.conclusions) {
    Subst t = s;
    if (match(c.lhs, st.seq.lhs, t) && match(c.rhs, st.seq.rhs, t)) return std::nullopt;
  }
  return "conclusion is not an instance of rule " + r.id;
}

}  // namespace

std::optional<StepError> check_derivation(const LogicProfile& p, const Derivation& d) {
  if (d.steps.empty()) return StepError{-1, "empty derivation"};
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Step& st = d.steps[i];
    const int si = static_cast<int>(i);
    if (st.by == "hyp") {
      if (!st.from.empty()) return StepError{si, "hypotheses take no premises"};
      continue;
    }
    std::vector<const Sequent*> prem;
    for (int j : st.from) {
      if (j < 0 || j >= si) return StepError{si, "premise index " + std::to_string(j) + " is not an earlier step"};
      prem.push_back(&d.steps[j].seq);
    }
    std::vector<std::string> ids;
    if (st.by == "RK") {
      for (int n = 1; n <= std::min(p.rk_cap, 4); ++n) ids.push_back("RK" + std::to_string(n));
    } else {
      ids.push_back(st.by);
    }
    std::string why;
    bool ok = false;
    for (const auto& id : ids) {
      const Rule* r = find_rule(id);
      if (!r) return StepError{si, "unknown rule " + id};
      if (!p.enables(id)) {
        why = "rule " + id + " is not enabled in profile " + to_string(p.base);
        continue;
      }
      auto err = check_instance(*r, st, prem);
      if (!err) {
        ok = true;
        break;
      }
      why = *err;
    }
    if (!ok) return StepError{si, why};
  }
  return std::nullopt;
}

std::vector<Formula> make_bound(const std::vector<Formula>& seeds) {
  std::vector<Formula> out;
  std::unordered_map<Formula, int, FormulaHash> seen;
  auto add = [&](const Formula& f) {
    for (const auto& g : subformula_closure(f))
      if (seen.emplace(g, 0).second) out.push_back(g);
  };
  add(Formula::bot());
  add(Formula::top());
  add(Formula::box(Formula::top()));
  for (const auto& f : seeds) add(f);
  // Conjunctions with a double-negated conjunct, so rules stated with a
  // negated metavariable (6, 14) reach their involution variants.
  const std::size_t closed = out.size();
  for (std::size_t k = 0; k < closed; ++k) {
    const Formula f = out[k];
    if (f.kind() != Kind::And) continue;
    auto nn = [](const Formula& g) { return Formula::neg(Formula::neg(g)); };
    add(Formula::conj(nn(f.left()), f.right()));
    add(Formula::conj(f.left(), nn(f.right())));
  }
  const std::size_t base = out.size();
  for (std::size_t k = 0; k < base; ++k) add(Formula::neg(out[k]));
  return out;
}

namespace {

struct Candidate {
  int a, b;
  const Rule* rule;
  std::vector<std::pair<int, int>> prem;
  Subst subst;
};

}  // namespace

std::optional<Derivation> saturate(const LogicProfile& p, const Sequent& goal, const std::vector<Formula>& bound,
                                   const std::set<std::string>& bool_atoms, SaturateStats* stats) {
  std::unordered_map<Formula, int, FormulaHash> idx;
  std::vector<Formula> U;
  for (const auto& f : bound)
    if (idx.emplace(f, static_cast<int>(U.size())).second) U.push_back(f);
  auto gl = idx.find(goal.lhs), gr = idx.find(goal.rhs);
  if (gl == idx.end() || gr == idx.end()) throw ValidationError("bound too small to state the goal");
  const int n = static_cast<int>(U.size());
  const int ga = gl->second, gb = gr->second;

  // Every rule instance (except transitivity) whose formulas lie in U.
  std::vector<Candidate> cands;
  for (const auto& r : rule_table()) {
    if (r.id == "7" || !p.enables(r.id)) continue;
    for (const auto& c : r.conclusions) {
      for (int a = 0; a < n; ++a) {
        Subst s0;
        if (!match(c.lhs, U[a], s0)) continue;
        for (int b = 0; b < n; ++b) {
          Subst s = s0;
          if (!match(c.rhs, U[b], s)) continue;
          Candidate cd{a, b, &r, {}, s};
          bool ok = true;
          for (const auto& q : r.premises) {
            auto il = idx.find(substitute(q.lhs, s)), ir = idx.find(substitute(q.rhs, s));
            if (il == idx.end() || ir == idx.end()) {
              ok = false;
              break;
            }
            cd.prem.emplace_back(il->second, ir->second);
          }
          if (ok) cands.push_back(std::move(cd));
        }
      }
    }
  }

  std::vector<boost::dynamic_bitset<>> D(n, boost::dynamic_bitset<>(n));
  // just[a*n+b]: candidate index, or -(mid+2) for transitivity through mid.
  std::vector<int> just(static_cast<std::size_t>(n) * n, -1);
  std::size_t derived = 0;
  int rounds = 0;
  bool changed = true;
  while (changed && !D[ga][gb]) {
    changed = false;
    ++rounds;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const auto& cd = cands[k];
      if (D[cd.a][cd.b]) continue;
      bool ready = true;
      for (auto [x, y] : cd.prem) ready = ready && D[x][y];
      if (!ready) continue;
      D[cd.a][cd.b] = true;
      just[static_cast<std::size_t>(cd.a) * n + cd.b] = static_cast<int>(k);
      ++derived;
      changed = true;
    }
    if (p.enables("7")) {
      for (int a = 0; a < n; ++a) {
        auto row = D[a];
        for (auto c = row.find_first(); c != row.npos; c = row.find_next(c)) {
          auto fresh = D[c] - D[a];
          for (auto b = fresh.find_first(); b != fresh.npos; b = fresh.find_next(b)) {
            D[a][b] = true;
            just[static_cast<std::size_t>(a) * n + b] = -(static_cast<int>(c) + 2);
            ++derived;
            changed = true;
          }
        }
      }
    }
  }
  if (stats) *stats = {static_cast<std::size_t>(n), derived, rounds};
  if (!D[ga][gb]) return std::nullopt;

  Derivation d;
  d.bool_atoms = bool_atoms;
  std::unordered_map<std::size_t, int> emitted;
  std::function<int(int, int)> emit = [&](int a, int b) -> int {
    std::size_t key = static_cast<std::size_t>(a) * n + b;
    if (auto it = emitted.find(key); it != emitted.end()) return it->second;
    Step st;
    st.seq = {U[a], U[b]};
    int j = just[key];
    if (j >= 0) {
      const auto& cd = cands[j];
      for (auto [x, y] : cd.prem) st.from.push_back(emit(x, y));
      st.by = cd.rule->id;
      st.subst = cd.subst;
    } else {
      int mid = -j - 2;
      st.from = {emit(a, mid), emit(mid, b)};
      st.by = "7";
      st.subst = {{"phi", U[a]}, {"psi", U[mid]}, {"chi", U[b]}};
    }
    d.steps.push_back(std::move(st));
    int at = static_cast<int>(d.steps.size()) - 1;
    emitted[key] = at;
    return at;
  };
  emit(ga, gb);
  return d;
}

SoundnessReport check_soundness(const LogicProfile& p, const Frame& F, int samples, std::uint32_t seed) {
  const bool cond = p.base == Base::CondModal || p.base == Base::CondEpistemic;
  if (cond && !F.has_selection()) throw ValidationError("conditional profile needs a frame with a selection function");
  if (p.base != Base::O && !F.has_i() && !F.has_R())
    throw ValidationError("modal profile needs a frame with i or R");
  SoundnessReport rep;
  std::mt19937 rng(seed);
  const auto& props = F.prop_family();
  std::vector<Mask> bools = F.has_bool_family() ? F.bool_family() : std::vector<Mask>{Mask{0}, F.all()};
  Model M;
  M.frame = F;
  for (const auto& r : rule_table()) {
    if (!p.enables(r.id)) continue;
    auto vars = metavars(r);
    bool reported = false;
    for (int k = 0; k < samples && !reported; ++k) {
      M.valuation.clear();
      for (const auto& v : vars) {
        const auto& dom = r.bool_vars.count(v) ? bools : props;
        M.valuation[v] = dom[std::uniform_int_distribution<std::size_t>(0, dom.size() - 1)(rng)];
      }
      ++rep.checked;
      bool prem = true;
      for (const auto& q : r.premises) prem = prem && subset(extension(M, q.lhs), extension(M, q.rhs));
      if (!prem) continue;
      for (const auto& c : r.conclusions) {
        Mask bad = extension(M, c.lhs) & ~extension(M, c.rhs);
        if (bad) {
          rep.violations.push_back({r.id, M.valuation, std::countr_zero(bad)});
          reported = true;
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace orth
