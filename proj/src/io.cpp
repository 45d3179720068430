#include "orth/io.hpp"

#include <fstream>
#include <sstream>

#include "orth/error.hpp"
#include "orth/fixtures.hpp"

namespace orth::io {

namespace {

int name_index(const std::vector<std::string>& names, const json& v) {
  if (v.is_number_integer()) {
    int a = v.get<int>();
    if (a < 0 || a >= static_cast<int>(names.size())) throw ValidationError("index out of range");
    return a;
  }
  const auto s = v.get<std::string>();
  for (std::size_t k = 0; k < names.size(); ++k)
    if (names[k] == s) return static_cast<int>(k);
  throw ValidationError("unknown element " + s);
}

// Object keys are strings: all digits means an index, anything else a name.
int key_index(const std::vector<std::string>& names, const std::string& key) {
  if (!key.empty() && key.find_first_not_of("0123456789") == std::string::npos)
    return name_index(names, json(std::stoi(key)));
  return name_index(names, json(key));
}

// Element reference: index (number or digit string) or element name.
int elem_ref(const Ortholattice& L, const json& v) {
  if (v.is_number_integer()) {
    int a = v.get<int>();
    if (a < 0 || a >= L.size()) throw ValidationError("element index out of range: " + std::to_string(a));
    return a;
  }
  if (!v.is_string()) throw ValidationError("element reference must be an index or a name");
  return key_index(L.names(), v.get<std::string>());
}

int point(const Frame& F, const json& v) {
  if (!v.is_string()) throw ValidationError("possibility must be given by name");
  int x = F.index(v.get<std::string>());
  if (x < 0) throw ValidationError("unknown possibility " + v.get<std::string>());
  return x;
}

Mask set_of(const Frame& F, const json& v) {
  if (!v.is_array()) throw ValidationError("a set of possibilities must be a list of names");
  return F.parse_set(v.get<std::vector<std::string>>());
}

std::vector<Mask> family(const Frame& F, const json& v) {
  std::vector<Mask> out;
  for (const auto& s : v) out.push_back(set_of(F, s));
  return out;
}

}  // namespace

json set_json(const Frame& F, Mask A) {
  json a = json::array();
  each(A, [&](int x) { a.push_back(F.name(x)); });
  return a;
}

json valuation_json(const Frame& F, const std::map<std::string, Mask>& v) {
  json j = json::object();
  for (const auto& [k, m] : v) j[k] = set_json(F, m);
  return j;
}

// ------------------------------------------------------------- lattices

json to_json(const Ortholattice& L) {
  json j;
  j["elements"] = L.names();
  json leq = json::array();
  for (auto [a, b] : L.covers()) leq.push_back({a, b});
  j["leq"] = leq;
  json neg = json::object();
  for (int a = 0; a < L.size(); ++a) neg[std::to_string(a)] = L.neg(a);
  j["neg"] = neg;
  if (L.has_box()) {
    json box = json::object();
    for (int a = 0; a < L.size(); ++a) box[std::to_string(a)] = L.box(a);
    j["box"] = box;
  }
  if (L.has_bool_block()) j["bool"] = L.bool_block();
  if (L.has_arrow()) {
    json arr = json::object();
    for (int a = 0; a < L.size(); ++a)
      for (int b = 0; b < L.size(); ++b) arr[std::to_string(a) + "," + std::to_string(b)] = L.arrow(a, b);
    j["arrow"] = arr;
  }
  return j;
}

Ortholattice lattice_from_json(const json& j) {
  if (!j.contains("elements") || !j.contains("leq") || !j.contains("neg"))
    throw ValidationError("lattice document needs elements, leq and neg");
  auto names = j.at("elements").get<std::vector<std::string>>();
  const int n = static_cast<int>(names.size());
  std::vector<std::pair<int, int>> leq;
  for (const auto& p : j.at("leq")) {
    if (!p.is_array() || p.size() != 2) throw ValidationError("leq entries are pairs");
    leq.emplace_back(name_index(names, p[0]), name_index(names, p[1]));
  }
  std::vector<int> neg(n, -1);
  auto unary = [&](const json& m, std::vector<int>& out, const char* what) {
    if (!m.is_object()) throw ValidationError(std::string(what) + " must be an object");
    for (auto it = m.begin(); it != m.end(); ++it) out[key_index(names, it.key())] = name_index(names, it.value());
  };
  unary(j.at("neg"), neg, "neg");
  for (int a = 0; a < n; ++a)
    if (neg[a] < 0) throw ValidationError("neg missing for element " + names[a]);
  auto L = Ortholattice::from_order(names, leq, neg);
  if (j.contains("box")) {
    std::vector<int> box(n, -1);
    unary(j.at("box"), box, "box");
    for (int a = 0; a < n; ++a)
      if (box[a] < 0) throw ValidationError("box missing for element " + names[a]);
    L.set_box(box);
  }
  if (j.contains("bool")) {
    std::vector<int> block;
    for (const auto& v : j.at("bool")) block.push_back(elem_ref(L, v));
    L.set_bool_block(block);
  }
  if (j.contains("arrow")) {
    std::vector<int> table(n * n, -1);
    for (auto it = j.at("arrow").begin(); it != j.at("arrow").end(); ++it) {
      auto key = it.key();
      auto comma = key.find(',');
      if (comma == std::string::npos) throw ValidationError("arrow keys look like \"i,j\"");
      int a = elem_ref(L, json(key.substr(0, comma))), b = elem_ref(L, json(key.substr(comma + 1)));
      table[a * n + b] = elem_ref(L, it.value());
    }
    for (int v : table)
      if (v < 0) throw ValidationError("arrow table incomplete");
    L.set_arrow(table);
  }
  return L;
}

// ------------------------------------------------------------- frames

json to_json(const Frame& F) {
  json j;
  j["possibilities"] = F.names();
  json compat = json::array();
  for (int x = 0; x < F.size(); ++x)
    for (int y = x + 1; y < F.size(); ++y)
      if (F.compat(x, y)) compat.push_back({F.name(x), F.name(y)});
  j["compat"] = compat;
  if (F.has_i()) {
    json i = json::object();
    for (int x = 0; x < F.size(); ++x)
      if (F.i(x) >= 0) i[F.name(x)] = F.name(F.i(x));
    j["i"] = i;
  }
  if (F.has_R()) {
    json R = json::object();
    for (int x = 0; x < F.size(); ++x) R[F.name(x)] = set_json(F, F.R(x));
    j["R"] = R;
  }
  if (F.has_bool_family()) {
    json b = json::array();
    for (Mask A : F.bool_family()) b.push_back(set_json(F, A));
    j["bool_family"] = b;
  }
  if (F.has_prop_family()) {
    json p = json::array();
    for (Mask A : F.prop_family()) p.push_back(set_json(F, A));
    j["prop_family"] = p;
  }
  if (F.has_selection()) {
    json sel = json::array();
    for (Mask A : F.prop_family())
      for (int x = 0; x < F.size(); ++x)
        if (int y = F.c(x, A); y >= 0)
          sel.push_back({{"at", F.name(x)}, {"antecedent", set_json(F, A)}, {"to", F.name(y)}});
    j["selection"] = sel;
  }
  return j;
}

Frame frame_from_json(const json& j) {
  if (!j.contains("possibilities")) throw ValidationError("frame document needs possibilities");
  auto names = j.at("possibilities").get<std::vector<std::string>>();
  Frame F(names);
  if (F.size() != static_cast<int>(names.size())) throw ValidationError("duplicate possibility names");
  if (j.contains("compat"))
    for (const auto& p : j.at("compat")) {
      if (!p.is_array() || p.size() != 2) throw ValidationError("compat entries are pairs of names");
      F.set_compat(point(F, p[0]), point(F, p[1]));
    }
  if (j.contains("i"))
    for (auto it = j.at("i").begin(); it != j.at("i").end(); ++it) F.set_i(point(F, json(it.key())), point(F, it.value()));
  if (j.contains("R")) {
    std::vector<Mask> succ(F.size(), 0);
    for (auto it = j.at("R").begin(); it != j.at("R").end(); ++it) succ[point(F, json(it.key()))] = set_of(F, it.value());
    for (int x = 0; x < F.size(); ++x) F.set_R(x, succ[x]);
  }
  if (j.contains("bool_family")) F.set_bool_family(family(F, j.at("bool_family")));
  if (j.contains("prop_family")) F.set_prop_family(family(F, j.at("prop_family")));
  if (j.contains("selection")) {
    F.enable_selection();
    for (const auto& e : j.at("selection")) {
      if (!e.contains("at") || !e.contains("antecedent") || !e.contains("to"))
        throw ValidationError("selection entries need at, antecedent and to");
      F.set_c(point(F, e.at("at")), set_of(F, e.at("antecedent")), point(F, e.at("to")));
    }
  }
  return F;
}

json to_json(const Model& M) {
  json j = to_json(M.frame);
  j["valuation"] = valuation_json(M.frame, M.valuation);
  j["bool_atoms"] = M.bool_atoms;
  return j;
}

Model model_from_json(const json& j) {
  Model M;
  M.frame = frame_from_json(j);
  if (j.contains("valuation"))
    for (auto it = j.at("valuation").begin(); it != j.at("valuation").end(); ++it)
      M.valuation[it.key()] = set_of(M.frame, it.value());
  if (j.contains("bool_atoms")) M.bool_atoms = j.at("bool_atoms").get<std::set<std::string>>();
  validate_model(M);
  return M;
}

// ------------------------------------------------------------- measures

json measure_to_json(const Ortholattice& L, const Measure& mu) {
  json j = json::object();
  for (int a = 0; a < L.size(); ++a) j[L.name(a)] = format_rational(mu[a]);
  return j;
}

Measure measure_from_json(const Ortholattice& L, const json& j) {
  if (!j.is_object()) throw ValidationError("a measure is an object from element names to values");
  Measure mu(L.size(), Rational(0));
  std::vector<char> seen(L.size(), 0);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int a = L.index(it.key());
    if (a < 0) throw ValidationError("unknown element " + it.key());
    mu[a] = it.value().is_string() ? parse_rational(it.value().get<std::string>())
                                   : parse_rational(it.value().dump());
    seen[a] = 1;
  }
  for (int a = 0; a < L.size(); ++a)
    if (!seen[a]) throw ValidationError("measure has no value for " + L.name(a));
  return mu;
}

json assignment_to_json(const Frame& F, const PropLattice& P, const ProbAssignment& PA) {
  json j = json::object();
  for (int x = 0; x < F.size(); ++x) {
    json list = json::array();
    for (const auto& mu : PA.at[x]) list.push_back(measure_to_json(P.lattice, mu));
    j[F.name(x)] = list;
  }
  return j;
}

ProbAssignment assignment_from_json(const Frame& F, const PropLattice& P, const json& j) {
  ProbAssignment PA;
  PA.at.resize(F.size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    int x = point(F, json(it.key()));
    for (const auto& m : it.value()) PA.at[x].push_back(measure_from_json(P.lattice, m));
  }
  for (int x = 0; x < F.size(); ++x)
    if (PA.at[x].empty()) throw ValidationError("no measures at " + F.name(x));
  return PA;
}

// ------------------------------------------------------------- derivations

json to_json(const LogicProfile& p) {
  return json{{"base", to_string(p.base)}, {"toggles", p.toggles}, {"rk_cap", p.rk_cap}};
}

LogicProfile profile_from_json(const json& j) {
  LogicProfile p;
  if (j.is_string()) {
    auto b = base_from_string(j.get<std::string>());
    if (!b) throw ValidationError("unknown logic " + j.get<std::string>());
    p.base = *b;
    return p;
  }
  auto b = base_from_string(j.at("base").get<std::string>());
  if (!b) throw ValidationError("unknown logic " + j.at("base").get<std::string>());
  p.base = *b;
  if (j.contains("toggles")) p.toggles = j.at("toggles").get<std::set<std::string>>();
  if (j.contains("rk_cap")) p.rk_cap = j.at("rk_cap").get<int>();
  return p;
}

json to_json(const Derivation& d) {
  json steps = json::array();
  for (const auto& s : d.steps) {
    json st{{"seq", print_sequent(s.seq)}, {"by", s.by}, {"from", s.from}};
    if (!s.subst.empty()) {
      json sub = json::object();
      for (const auto& [k, f] : s.subst) sub[k] = print(f);
      st["subst"] = sub;
    }
    steps.push_back(st);
  }
  return json{{"bool_atoms", d.bool_atoms}, {"steps", steps}};
}

Derivation derivation_from_json(const json& j) {
  Derivation d;
  const json* steps = &j;
  if (j.is_object()) {
    if (j.contains("bool_atoms")) d.bool_atoms = j.at("bool_atoms").get<std::set<std::string>>();
    if (!j.contains("steps")) throw ValidationError("derivation document needs steps");
    steps = &j.at("steps");
  }
  if (!steps->is_array()) throw ValidationError("steps must be a list");
  for (const auto& e : *steps) {
    Step s;
    if (!e.contains("seq") || !e.contains("by")) throw ValidationError("every step needs seq and by");
    s.seq = parse_sequent(e.at("seq").get<std::string>(), d.bool_atoms);
    s.by = e.at("by").get<std::string>();
    if (e.contains("from")) s.from = e.at("from").get<std::vector<int>>();
    if (e.contains("subst"))
      for (auto it = e.at("subst").begin(); it != e.at("subst").end(); ++it)
        s.subst[it.key()] = parse(it.value().get<std::string>(), d.bool_atoms);
    d.steps.push_back(std::move(s));
  }
  return d;
}

// ------------------------------------------------------------- search

json witness_json(const Frame& F, const FrameWitness& w) {
  json pts = json::array();
  for (int x : w.points) pts.push_back(F.name(x));
  json sets = json::array();
  for (Mask A : w.sets) sets.push_back(set_json(F, A));
  return json{{"points", pts}, {"sets", sets}, {"what", w.what}};
}

json to_json(const SearchResult& r) {
  json j{{"status", to_string(r.status)}};
  json log = json::array();
  for (const auto& l : r.log) log.push_back({{"size", l.size}, {"frames", l.frames}});
  j["log"] = log;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.model) {
    j["model"] = to_json(*r.model);
    j["at"] = r.model->frame.name(r.point);
  }
  return j;
}

// ------------------------------------------------------------- DOT

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string frame_dot(const Frame& F) {
  std::ostringstream o;
  o << "graph frame {\n  node [shape=circle];\n";
  for (int x = 0; x < F.size(); ++x) o << "  " << quoted(F.name(x)) << ";\n";
  for (int x = 0; x < F.size(); ++x)
    for (int y = x + 1; y < F.size(); ++y)
      if (F.compat(x, y)) o << "  " << quoted(F.name(x)) << " -- " << quoted(F.name(y)) << " [style=solid, kind=compat];\n";
  // Strict refinement, drawn as a directed-looking edge from the finer point.
  for (int y = 0; y < F.size(); ++y)
    for (int x = 0; x < F.size(); ++x)
      if (x != y && refines(F, y, x) && !refines(F, x, y))
        o << "  " << quoted(F.name(y)) << " -- " << quoted(F.name(x))
          << " [style=dashed, dir=forward, kind=refines];\n";
  if (F.has_i())
    for (int x = 0; x < F.size(); ++x)
      if (F.i(x) >= 0)
        o << "  " << quoted(F.name(x)) << " -- " << quoted(F.name(F.i(x)))
          << " [style=dotted, dir=forward, kind=i];\n";
  if (F.has_R())
    for (int x = 0; x < F.size(); ++x)
      each(F.R(x), [&](int y) {
        o << "  " << quoted(F.name(x)) << " -- " << quoted(F.name(y)) << " [style=dotted, dir=forward, kind=R];\n";
      });
  o << "}\n";
  return o.str();
}

std::string lattice_dot(const Ortholattice& L) {
  std::ostringstream o;
  o << "digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n";
  for (int a = 0; a < L.size(); ++a) {
    o << "  n" << a << " [label=" << quoted(L.name(a));
    if (L.has_bool_block() && L.in_block(a)) o << ", bool=true";
    o << "];\n";
  }
  for (auto [a, b] : L.covers()) o << "  n" << a << " -> n" << b << " [dir=none];\n";
  o << "}\n";
  return o.str();
}

// ------------------------------------------------------------- fixtures

json fixture_json(const std::string& name) {
  namespace fx = orth::fixtures;
  if (name == "two") return to_json(fx::two());
  if (name == "o6") return to_json(fx::o6());
  if (name == "mo2") return to_json(fx::mo2());
  if (name == "fig1") return to_json(fx::fig1());
  if (name == "fig1-measure") {
    auto L = fx::fig1();
    json j = to_json(L);
    j["measure"] = measure_to_json(L, fx::fig1_measure());
    return j;
  }
  if (name == "chain4") return to_json(fx::chain(4));
  if (name == "chain5") return to_json(fx::chain(5));
  if (name == "cycle4") return to_json(fx::cycle4());
  if (name == "scale") return to_json(fx::scale());
  if (name == "scale-relational") return to_json(fx::scale_relational());
  if (name == "grid") return to_json(fx::grid());
  if (name == "grid-cut") return to_json(fx::grid_cut());
  if (name == "conditional") return to_json(fx::conditional());
  if (name == "scale-measures") {
    auto M = fx::scale();
    auto P = proposition_lattice(M.frame);
    json j = to_json(M.frame);
    j["measures"] = assignment_to_json(M.frame, P, fx::scale_assignment(P));
    return j;
  }
  if (name == "two-worlds") {
    auto F = fx::two_worlds();
    auto P = proposition_lattice(F);
    json j = to_json(F);
    j["measures"] = assignment_to_json(F, P, fx::two_worlds_assignment(P));
    return j;
  }
  throw ValidationError("unknown fixture " + name);
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace orth::io
