#include "orth/semantics.hpp"

#include <algorithm>

#include "orth/error.hpp"

namespace orth {

namespace {

std::vector<Mask> bool_domain(const Frame& F) {
  if (F.has_bool_family()) return F.bool_family();
  return {Mask{0}, F.all()};
}

bool contains(const std::vector<Mask>& v, Mask m) { return std::find(v.begin(), v.end(), m) != v.end(); }

Mask ext(const Frame& F, const std::map<std::string, Mask>& V, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::BoolAtom: {
      auto it = V.find(f.name());
      if (it == V.end()) throw ValidationError("valuation has no value for atom " + f.name());
      return it->second;
    }
    case Kind::Bot: return 0;
    case Kind::Top: return F.all();
    case Kind::Neg: return neg_set(F, ext(F, V, f.left()));
    case Kind::And: return ext(F, V, f.left()) & ext(F, V, f.right());
    case Kind::Box: return box_set(F, ext(F, V, f.left()));
    case Kind::Cond: return arrow_set(F, ext(F, V, f.left()), ext(F, V, f.right()));
  }
  return 0;
}

// Odometer over choices; the first variable is the most significant digit.
template <class Visit>
bool enumerate(const std::vector<const std::vector<Mask>*>& domains, std::map<std::string, Mask>& V,
               const std::vector<std::string>& names, Visit&& visit) {
  const std::size_t k = names.size();
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t j = 0; j < k; ++j) {
    if (domains[j]->empty()) return false;
    V[names[j]] = (*domains[j])[0];
  }
  while (true) {
    if (visit()) return true;
    std::size_t j = k;
    while (j > 0) {
      --j;
      if (++idx[j] < domains[j]->size()) {
        V[names[j]] = (*domains[j])[idx[j]];
        break;
      }
      idx[j] = 0;
      V[names[j]] = (*domains[j])[0];
      if (j == 0) return false;
    }
    if (k == 0) return false;
  }
}

std::uint64_t instance_count(const std::vector<const std::vector<Mask>*>& domains, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (auto* d : domains) {
    if (d->empty()) return 0;
    if (total > cap / d->size() + 1) return cap + 1;
    total *= d->size();
  }
  return total;
}

}  // namespace

void validate_model(const Model& M) {
  const Frame& F = M.frame;
  auto bools = bool_domain(F);
  for (const auto& [name, A] : M.valuation) {
    if (!subset(A, F.all())) throw ValidationError("valuation of " + name + " mentions unknown possibilities");
    if (!is_regular(F, A)) throw ValidationError("valuation of " + name + " is not regular: " + F.set_name(A));
    if (M.bool_atoms.count(name)) {
      if (!contains(bools, A)) throw ValidationError("Boolean atom " + name + " is not in the Boolean family");
    } else if (F.has_prop_family() && F.prop_index(A) < 0) {
      throw ValidationError("atom " + name + " is not in the proposition family");
    }
  }
}

Mask extension(const Model& M, const Formula& f) { return ext(M.frame, M.valuation, f); }

bool forces(const Model& M, int x, const Formula& f) {
  if (x < 0 || x >= M.frame.size()) throw ValidationError("possibility out of range");
  return has(extension(M, f), x);
}

std::optional<Countermodel> entails_on_frame(const Frame& F, const Formula& f, const Formula& g,
                                             const std::set<std::string>& bool_atoms, std::uint64_t cap) {
  auto names = atoms(std::vector<Formula>{f, g});
  auto bools = bool_domain(F);
  const auto& props = F.prop_family();
  std::vector<const std::vector<Mask>*> domains;
  auto fb = bool_atom_names(f), gb = bool_atom_names(g);
  for (const auto& n : names) {
    bool is_b = bool_atoms.count(n) || fb.count(n) || gb.count(n);
    domains.push_back(is_b ? &bools : &props);
  }
  if (instance_count(domains, cap) > cap)
    throw BudgetExhausted("valuation count exceeds the instance cap");
  std::map<std::string, Mask> V;
  std::optional<Countermodel> out;
  enumerate(domains, V, names, [&] {
    Mask bad = ext(F, V, f) & ~ext(F, V, g);
    if (!bad) return false;
    out = Countermodel{V, std::countr_zero(bad)};
    return true;
  });
  return out;
}

PrincipleSchema make_schema(const std::string& id, int number, const std::vector<std::string>& premises,
                            const std::vector<std::string>& conclusions, const std::set<std::string>& bool_vars) {
  PrincipleSchema s;
  s.id = id;
  s.number = number;
  s.bool_vars = bool_vars;
  std::vector<Formula> all;
  auto seq = [&](const std::string& text) {
    auto pos = text.find("|-");
    if (pos == std::string::npos) throw ValidationError("sequent needs |-: " + text);
    Sequent q{parse(text.substr(0, pos), bool_vars), parse(text.substr(pos + 2), bool_vars)};
    all.push_back(q.lhs);
    all.push_back(q.rhs);
    return q;
  };
  for (const auto& p : premises) s.premises.push_back(seq(p));
  for (const auto& c : conclusions) s.conclusions.push_back(seq(c));
  s.vars = atoms(all);
  return s;
}

const std::vector<PrincipleSchema>& principle_library() {
  static const std::vector<PrincipleSchema> lib = [] {
    const std::set<std::string> B{"beta"};
    std::vector<PrincipleSchema> v;
    v.push_back(make_schema("Identity", 16, {}, {"phi |- psi -> psi"}, {}));
    v.push_back(make_schema("SimpleModusPonens", 17, {}, {"(phi -> beta) & phi |- beta"}, B));
    v.push_back(make_schema("SimpleConjunctiveSufficiency", 17, {}, {"phi & beta |- phi -> beta"}, B));
    v.push_back(make_schema("SimpleModusTollens", 18, {}, {"(phi -> beta) & ~beta |- ~phi"}, B));
    v.push_back(make_schema("ModalizedModusPonens", 19, {}, {"(phi -> psi) & []phi |- psi"}, {}));
    v.push_back(make_schema("ModalizedConjunctiveSufficiency", 19, {}, {"[]phi & psi |- phi -> psi"}, {}));
    v.push_back(make_schema("ModalizedModusTollens", 20, {}, {"(phi -> psi) & ~psi |- ~[]phi"}, {}));
    v.push_back(make_schema("MustIntroduction", 21, {"phi |- psi"}, {"chi |- phi -> []psi"}, {}));
    v.push_back(make_schema("SimpleMustImport", 22, {}, {"[](phi -> beta) |- phi -> []beta"}, B));
    v.push_back(make_schema("SafeMustExport", 23, {}, {"beta -> []psi |- [](beta -> psi)"}, B));
    v.push_back(make_schema("MustPreservation", 24, {}, {"<>(phi & psi) & []psi |- phi -> []psi"}, {}));
    v.push_back(make_schema("Flattening", 25, {},
                            {"phi -> ((phi & psi) -> chi) |- (phi & psi) -> chi",
                             "(phi & psi) -> chi |- phi -> ((phi & psi) -> chi)"},
                            {}));
    v.push_back(make_schema("WeakBoethius", 26, {}, {"<>phi & (phi -> psi) |- ~(phi -> ~psi)"}, {}));
    v.push_back(make_schema("MustIfCombination", 27, {}, {"phi -> psi |- ~phi \\/ ([]phi & (phi -> psi))"}, {}));
    v.push_back(make_schema("SafeNegationImport", 28, {}, {"~(beta -> psi) |- beta -> ~psi"}, B));
    v.push_back(make_schema("SafeCEMPlus", 29, {}, {"beta -> (psi \\/ chi) |- (beta -> psi) \\/ (beta -> chi)"}, B));
    v.push_back(make_schema("Distributivity", 0, {}, {"phi & (psi \\/ chi) |- (phi & psi) \\/ (phi & chi)"}, {}));
    v.push_back(make_schema("WittgensteinLaw", 0, {}, {"~phi & <>phi |- bot"}, {}));
    v.push_back(make_schema("DisjunctiveSyllogism", 0, {}, {"(phi \\/ psi) & ~phi |- psi"}, {}));
    v.push_back(make_schema("Orthomodularity", 0, {"phi |- psi"}, {"psi |- phi \\/ (~phi & psi)"}, {}));
    v.push_back(make_schema("QualifiedCollapse", 0, {}, {"psi & (psi -> <>(psi & phi)) |- phi -> psi"}, {}));
    return v;
  }();
  return lib;
}

const PrincipleSchema* find_principle(const std::string& id) {
  for (const auto& s : principle_library())
    if (s.id == id) return &s;
  return nullptr;
}

std::vector<const PrincipleSchema*> principles_numbered(int number) {
  std::vector<const PrincipleSchema*> out;
  for (const auto& s : principle_library())
    if (s.number == number) out.push_back(&s);
  return out;
}

std::optional<PrincipleFailure> verify_principle(const Frame& F, const PrincipleSchema& s, std::uint64_t cap) {
  auto bools = bool_domain(F);
  const auto& props = F.prop_family();
  std::vector<const std::vector<Mask>*> domains;
  for (const auto& v : s.vars) domains.push_back(s.bool_vars.count(v) ? &bools : &props);
  if (instance_count(domains, cap) > cap) throw BudgetExhausted("instantiation count exceeds the instance cap");
  std::map<std::string, Mask> V;
  std::optional<PrincipleFailure> out;
  enumerate(domains, V, s.vars, [&] {
    for (const auto& p : s.premises)
      if (!subset(ext(F, V, p.lhs), ext(F, V, p.rhs))) return false;
    for (std::size_t k = 0; k < s.conclusions.size(); ++k) {
      const auto& c = s.conclusions[k];
      Mask bad = ext(F, V, c.lhs) & ~ext(F, V, c.rhs);
      if (bad) {
        out = PrincipleFailure{V, std::countr_zero(bad), static_cast<int>(k)};
        return true;
      }
    }
    return false;
  });
  return out;
}

}  // namespace orth
