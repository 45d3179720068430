#include "orth/error.hpp"
#include "orth/proof.hpp"

namespace orth {

namespace {

struct Spec {
  std::string name;
  Base base;
  std::set<std::string> toggles;
  std::string goal;
  std::set<std::string> bools;
  std::vector<std::string> hints;
};

std::vector<std::string> swap_vars(const std::vector<std::string>& hs, const std::map<std::string, std::string>& sub,
                                   const std::set<std::string>& bools) {
  std::map<std::string, Formula> m;
  for (const auto& [k, v] : sub) m.emplace(k, parse(v, bools));
  std::vector<std::string> out;
  for (const auto& h : hs) out.push_back(print(substitute(parse(h, bools), m)));
  return out;
}

std::vector<std::string> cat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Intermediate formulas of the textbook proofs.
const std::vector<std::string> kMCT = {
    "phi -> []phi",
    "(phi -> []psi) & (phi -> []phi)",
    "[]psi & []phi",
    "[](psi & phi)",
    "phi -> [](phi & psi)",
    "phi -> ((phi & psi) -> chi)",
    "(phi -> [](phi & psi)) & (phi -> ((phi & psi) -> chi))",
    "((phi & psi) -> chi) & [](phi & psi)",
    "[](phi & psi) & ((phi & psi) -> chi)",
    "(phi -> []psi) & ((phi & psi) -> chi)",
    "phi -> chi",
};

const std::vector<std::string> kMCM = {
    "phi -> []phi",
    "(phi -> []psi) & (phi -> []phi)",
    "[]psi & []phi",
    "[](psi & phi)",
    "phi -> [](phi & psi)",
    "(phi -> [](phi & psi)) & (phi -> chi)",
    "[](phi & psi) & chi",
    "phi -> ((phi & psi) -> chi)",
    "(phi -> []psi) & (phi -> chi)",
    "(phi & psi) -> chi",
};

const std::vector<std::string> kSCT = {
    "phi -> phi",
    "(phi -> phi) & (phi -> psi)",
    "phi & psi",
    "phi -> (phi & psi)",
    "phi -> ((phi & psi) -> beta)",
    "(phi -> (phi & psi)) & (phi -> ((phi & psi) -> beta))",
    "((phi & psi) -> beta) & (phi & psi)",
    "(phi & psi) & ((phi & psi) -> beta)",
    "(phi -> psi) & ((phi & psi) -> beta)",
    "phi -> beta",
};

const std::vector<std::string> kSCM = {
    "phi -> phi",
    "((phi -> phi) & (phi -> psi)) & (phi -> beta)",
    "(phi & psi) & beta",
    "phi -> ((phi & psi) -> beta)",
    "(phi -> psi) & (phi -> beta)",
    "(phi & psi) -> beta",
};

const std::vector<std::string> kPersistence = {
    "<>(psi & phi)",
    "<>(phi & psi) & []phi",
    "<>(psi & phi) & []phi",
    "psi -> []phi",
    "psi -> []psi",
    "(psi -> []phi) & (psi -> []psi)",
    "[]phi & []psi",
    "psi -> [](phi & psi)",
    "phi -> []phi",
    "(phi -> <>(phi & psi)) & (phi -> []phi)",
    "phi -> (psi -> [](phi & psi))",
};

const std::map<std::string, std::string> kInner = {{"phi", "psi"}, {"psi", "phi & psi"}};

std::vector<std::string> lifting_lr() {
  return cat({swap_vars(kMCM, kInner, {}), kPersistence,
              {"(psi -> [](phi & psi)) & (psi -> chi)", "(psi & (phi & psi)) -> chi", "(phi & psi) -> chi",
               "(phi -> (psi -> [](phi & psi))) & (phi -> (psi -> chi))", "phi -> ((phi & psi) -> chi)",
               "(phi -> <>(phi & psi)) & (phi -> (psi -> chi))"}});
}

std::vector<std::string> lifting_rl() {
  return cat({swap_vars(kMCT, kInner, {}), kPersistence,
              {"(psi -> [](phi & psi)) & ((phi & psi) -> chi)", "(psi -> [](phi & psi)) & ((psi & (phi & psi)) -> chi)",
               "(psi & (phi & psi)) -> chi", "psi -> chi",
               "(phi -> (psi -> [](phi & psi))) & (phi -> ((phi & psi) -> chi))", "phi -> (psi -> chi)",
               "(phi -> <>(phi & psi)) & (phi -> ((phi & psi) -> chi))"}});
}

const std::vector<std::string> kOrToIf = {
    "<>(~alpha & (alpha \\/ beta))",
    "<>(~alpha & beta)",
    "<>(~alpha & beta) & [](alpha \\/ beta)",
    "<>(~alpha & (alpha \\/ beta)) & [](alpha \\/ beta)",
    "~alpha -> [](alpha \\/ beta)",
    "~alpha -> []~alpha",
    "(~alpha -> [](alpha \\/ beta)) & (~alpha -> []~alpha)",
    "[](alpha \\/ beta) & []~alpha",
    "[]((alpha \\/ beta) & ~alpha)",
    "~alpha & (alpha \\/ beta)",
    "(~alpha & alpha) \\/ (~alpha & beta)",
    "~alpha & ~~alpha",
    "~alpha -> []beta",
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> v = [] {
    const std::set<std::string> mct{"MustIntroduction", "ModalizedModusPonens", "Flattening"};
    const std::set<std::string> mcm{"MustIntroduction", "ModalizedConjunctiveSufficiency", "Flattening"};
    const std::set<std::string> full{"MustIntroduction", "MustPreservation", "ModalizedModusPonens",
                                     "ModalizedConjunctiveSufficiency", "Flattening"};
    const std::set<std::string> B{"beta"}, AB{"alpha", "beta"};
    std::vector<Spec> s;
    s.push_back({"ModalizedCautiousTransitivity", Base::CondModal, mct,
                 "(phi -> []psi) & ((phi & psi) -> chi) |- phi -> chi", {}, kMCT});
    s.push_back({"ModalizedCautiousMonotonicity", Base::CondModal, mcm,
                 "(phi -> []psi) & (phi -> chi) |- (phi & psi) -> chi", {}, kMCM});
    s.push_back({"ModalizedReciprocity", Base::CondModal,
                 {"MustIntroduction", "ModalizedModusPonens", "ModalizedConjunctiveSufficiency", "Flattening"},
                 "(phi -> []psi) & (psi -> []phi) & (phi -> chi) |- psi -> chi", {},
                 cat({kMCM, swap_vars(kMCT, {{"phi", "psi"}, {"psi", "phi"}}, {}),
                      {"(psi -> []phi) & ((phi & psi) -> chi)", "(psi & phi) -> chi"}})});
    s.push_back({"SimpleCautiousTransitivity", Base::CondModal, {"Identity", "Flattening", "SimpleModusPonens"},
                 "(phi -> psi) & ((phi & psi) -> beta) |- phi -> beta", B, kSCT});
    s.push_back({"SimpleCautiousMonotonicity", Base::CondModal,
                 {"Identity", "Flattening", "SimpleConjunctiveSufficiency"},
                 "(phi -> psi) & (phi -> beta) |- (phi & psi) -> beta", B, kSCM});
    s.push_back({"SimpleReciprocity", Base::CondModal,
                 {"Identity", "Flattening", "SimpleModusPonens", "SimpleConjunctiveSufficiency"},
                 "(phi -> psi) & (psi -> phi) & (phi -> beta) |- psi -> beta", B,
                 cat({kSCM, swap_vars(kSCT, {{"phi", "psi"}, {"psi", "phi"}}, B),
                      {"(psi -> phi) & ((phi & psi) -> beta)", "(psi & phi) -> beta"}})});
    s.push_back({"Persistence", Base::CondModal, {"MustIntroduction", "MustPreservation"},
                 "phi -> <>(phi & psi) |- phi -> (psi -> [](phi & psi))", {}, kPersistence});
    s.push_back({"ModalizedLiftingLR", Base::CondModal, full,
                 "(phi -> <>(phi & psi)) & (phi -> (psi -> chi)) |- (phi -> <>(phi & psi)) & (phi -> ((phi & psi) -> chi))",
                 {}, lifting_lr()});
    s.push_back({"ModalizedLiftingRL", Base::CondModal, full,
                 "(phi -> <>(phi & psi)) & (phi -> ((phi & psi) -> chi)) |- (phi -> <>(phi & psi)) & (phi -> (psi -> chi))",
                 {}, lifting_rl()});
    s.push_back({"ModalizedImportExportLR", Base::CondModal, full,
                 "(phi -> <>(phi & psi)) & (phi -> (psi -> chi)) |- (phi -> <>(phi & psi)) & ((phi & psi) -> chi)", {},
                 cat({lifting_lr(), {"(phi -> <>(phi & psi)) & ((phi & psi) -> chi)"}})});
    s.push_back({"ModalizedImportExportRL", Base::CondModal, full,
                 "(phi -> <>(phi & psi)) & ((phi & psi) -> chi) |- (phi -> <>(phi & psi)) & (phi -> (psi -> chi))", {},
                 cat({lifting_rl(), {"(phi -> <>(phi & psi)) & (phi -> ((phi & psi) -> chi))"}})});
    s.push_back({"ModalizedOrToIfMust", Base::CondModal, {"MustIntroduction", "MustPreservation"},
                 "<>~alpha & [](alpha \\/ beta) |- ~alpha -> []beta", AB, kOrToIf});
    s.push_back({"ModalizedOrToIf", Base::CondEpistemic, {"MustIntroduction", "MustPreservation"},
                 "<>~alpha & [](alpha \\/ beta) |- ~alpha -> beta", AB,
                 cat({kOrToIf, {"~alpha -> beta"}})});
    s.push_back({"QualifiedCollapse", Base::CondModal,
                 {"Identity", "IfToOr", "ModalizedImportExport", "FullDistributivity"},
                 "psi & (psi -> <>(psi & phi)) |- phi -> psi", {},
                 {"(psi -> <>(psi & phi)) & ((psi & phi) -> psi)", "(psi -> <>(psi & phi)) & (psi -> (phi -> psi))",
                  "psi -> (phi -> psi)", "(psi & phi) -> (psi & phi)", "(psi & phi) -> psi", "~psi \\/ (phi -> psi)",
                  "psi & (~psi \\/ (phi -> psi))", "(psi & ~psi) \\/ (psi & (phi -> psi))"}});
    return s;
  }();
  return v;
}

Derivation hand(const std::vector<std::tuple<std::string, std::string, std::vector<int>>>& rows) {
  Derivation d;
  for (const auto& [seq, by, from] : rows) d.steps.push_back({parse_sequent(seq), by, from, {}});
  return d;
}

}  // namespace

std::vector<Formula> bundled_hints(const std::string& name) {
  for (const auto& s : specs())
    if (s.name == name) {
      std::vector<Formula> out;
      Sequent g = parse_sequent(s.goal, s.bools);
      out.push_back(g.lhs);
      out.push_back(g.rhs);
      for (const auto& h : s.hints) out.push_back(parse(h, s.bools));
      return out;
    }
  return {};
}

const std::vector<BundledDerivation>& bundled_derivations() {
  static const std::vector<BundledDerivation> all = [] {
    std::vector<BundledDerivation> v;
    LogicProfile O;
    {
      auto d = hand({{"~phi & ~psi |- ~phi", "2", {}},
                     {"~~phi |- phi \\/ psi", "9", {0}},
                     {"phi |- ~~phi", "4", {}},
                     {"phi |- phi \\/ psi", "7", {2, 1}}});
      v.push_back({"DisjunctionIntroduction", O, d.steps.back().seq, d});
    }
    {
      auto d = hand({{"phi |- chi", "hyp", {}},
                     {"psi |- chi", "hyp", {}},
                     {"~chi |- ~phi", "9", {0}},
                     {"~chi |- ~psi", "9", {1}},
                     {"~chi |- ~phi & ~psi", "8", {2, 3}},
                     {"phi \\/ psi |- ~~chi", "9", {4}},
                     {"~~chi |- chi", "5", {}},
                     {"phi \\/ psi |- chi", "7", {5, 6}}});
      v.push_back({"DisjunctionElimination", O, d.steps.back().seq, d});
    }
    for (const auto& s : specs()) {
      LogicProfile p;
      p.base = s.base;
      p.toggles = s.toggles;
      Sequent goal = parse_sequent(s.goal, s.bools);
      auto d = saturate(p, goal, make_bound(bundled_hints(s.name)), s.bools);
      if (!d) continue;  // reported as missing by the checks that look it up
      v.push_back({s.name, p, goal, *d});
    }
    return v;
  }();
  return all;
}

std::vector<std::string> bundled_names() {
  std::vector<std::string> out{"DisjunctionIntroduction", "DisjunctionElimination"};
  for (const auto& s : specs()) out.push_back(s.name);
  return out;
}

const BundledDerivation* find_bundled(const std::string& name) {
  for (const auto& b : bundled_derivations())
    if (b.name == name) return &b;
  return nullptr;
}

}  // namespace orth
