// ortho: command-line front end for the orth library.
// Exit codes: 0 success / holds, 1 countermodel or violation, 2 bad input,
// 3 budget exhausted.

#include <bit>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orth/error.hpp"
#include "orth/fixtures.hpp"
#include "orth/io.hpp"
#include "orth/proof.hpp"
#include "orth/search.hpp"
#include "orth/semantics.hpp"

using namespace orth;
using io::json;

namespace {

// Caps and budgets; defaults can be overridden by --config.
struct Config {
  std::uint64_t instance_cap = kDefaultInstanceCap;
  std::uint64_t search_budget = 5000000;
  int search_max_size = 5;
  std::uint64_t hunt_budget = 2000000;
  int hunt_max_size = 3;
  int rk_cap = 4;
  int threads = 1;
};

void load_config(Config& c, const std::string& path) {
  auto j = io::read_file(path);
  c.instance_cap = j.value("instance_cap", c.instance_cap);
  c.search_budget = j.value("search_budget", c.search_budget);
  c.search_max_size = j.value("search_max_size", c.search_max_size);
  c.hunt_budget = j.value("hunt_budget", c.hunt_budget);
  c.hunt_max_size = j.value("hunt_max_size", c.hunt_max_size);
  c.rk_cap = j.value("rk_cap", c.rk_cap);
  c.threads = j.value("threads", c.threads);
}

std::set<std::string> split_names(const std::string& s) {
  std::set<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json point_list(const Frame& F, Mask A) { return io::set_json(F, A); }

// A frame document with a valuation covering every atom is treated as a model.
bool covers(const Model& M, const std::vector<std::string>& names) {
  for (const auto& a : names)
    if (!M.valuation.count(a)) return false;
  return true;
}

LogicProfile make_profile(const std::string& logic, const std::vector<std::string>& toggles, int rk_cap) {
  auto b = base_from_string(logic);
  if (!b) throw ValidationError("unknown logic " + logic + " (O, EO, EOplus, CondModal, CondEpistemic)");
  LogicProfile p;
  p.base = *b;
  p.toggles.insert(toggles.begin(), toggles.end());
  p.rk_cap = rk_cap;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthologic toolkit: possibility frames, ortholattices, proofs and countermodel search"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Config cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with caps and budgets");
  int threads = 0;
  app.add_option("--threads", threads, "worker threads for search");

  int code = 0;
  std::set<std::string> bool_atoms;
  std::string bool_csv;
  auto add_bool = [&](CLI::App* c) { c->add_option("--bool", bool_csv, "comma-separated Boolean atoms"); };

  // parse
  auto* c_parse = app.add_subcommand("parse", "parse a formula and print its desugared form");
  std::string formula_text;
  bool unicode = false;
  c_parse->add_option("formula", formula_text)->required();
  c_parse->add_flag("--unicode", unicode);
  add_bool(c_parse);
  c_parse->callback([&] {
    auto f = parse(formula_text, bool_atoms);
    json subs = json::array();
    for (const auto& g : subformula_closure(f)) subs.push_back(print(g));
    emit({{"formula", print(f, unicode ? Style::Unicode : Style::Ascii)},
          {"fragment", to_string(classify(f, bool_atoms))},
          {"size", f.size()},
          {"depth", f.depth()},
          {"atoms", atoms(f)},
          {"subformulas", subs}});
  });

  // eval
  auto* c_eval = app.add_subcommand("eval", "evaluate a formula in a model or a lattice");
  std::string model_path, lattice_path, at;
  std::vector<std::string> assign;
  c_eval->add_option("formula", formula_text)->required();
  c_eval->add_option("--model", model_path);
  c_eval->add_option("--lattice", lattice_path);
  c_eval->add_option("--assign", assign, "atom=element for --lattice");
  c_eval->add_option("--at", at, "possibility; prints true/false");
  add_bool(c_eval);
  c_eval->callback([&] {
    if (!lattice_path.empty()) {
      auto L = io::lattice_from_json(io::read_file(lattice_path));
      AlgValuation v;
      for (const auto& a : assign) {
        auto eq = a.find('=');
        if (eq == std::string::npos) throw ValidationError("--assign expects atom=element");
        int e = L.index(a.substr(eq + 1));
        if (e < 0) throw ValidationError("unknown element " + a.substr(eq + 1));
        v[a.substr(0, eq)] = e;
      }
      auto f = parse(formula_text, bool_atoms);
      std::cout << L.name(eval_alg(L, v, f)) << "\n";
      return;
    }
    if (model_path.empty()) throw ValidationError("eval needs --model or --lattice");
    auto M = io::model_from_json(io::read_file(model_path));
    M.bool_atoms.insert(bool_atoms.begin(), bool_atoms.end());
    auto f = parse(formula_text, M.bool_atoms);
    if (!at.empty()) {
      int x = M.frame.index(at);
      if (x < 0) throw ValidationError("unknown possibility " + at);
      std::cout << (forces(M, x, f) ? "true" : "false") << "\n";
      return;
    }
    emit(point_list(M.frame, extension(M, f)));
  });

  // entails
  auto* c_ent = app.add_subcommand("entails", "check f |- g on a model or on every valuation of a frame");
  std::string frame_path, rhs_text;
  bool all_vals = false;
  c_ent->add_option("lhs", formula_text)->required();
  c_ent->add_option("rhs", rhs_text)->required();
  c_ent->add_option("--frame,--model", frame_path)->required();
  c_ent->add_flag("--all-valuations", all_vals, "ignore a stored valuation and quantify over all");
  add_bool(c_ent);
  c_ent->callback([&] {
    auto j = io::read_file(frame_path);
    Model M;
    M.frame = io::frame_from_json(j);
    if (j.contains("valuation")) M = io::model_from_json(j);
    M.bool_atoms.insert(bool_atoms.begin(), bool_atoms.end());
    auto f = parse(formula_text, M.bool_atoms), g = parse(rhs_text, M.bool_atoms);
    auto names = atoms(std::vector<Formula>{f, g});
    if (!all_vals && !M.valuation.empty() && covers(M, names)) {
      validate_model(M);
      Mask bad = extension(M, f) & ~extension(M, g);
      if (!bad) {
        emit({{"result", "valid"}, {"scope", "model"}});
        return;
      }
      int x = std::countr_zero(bad);
      emit({{"result", "countermodel"}, {"scope", "model"}, {"at", M.frame.name(x)},
            {"valuation", io::valuation_json(M.frame, M.valuation)}});
      code = 1;
      return;
    }
    auto cm = entails_on_frame(M.frame, f, g, M.bool_atoms, cfg.instance_cap);
    if (!cm) {
      emit({{"result", "valid"}, {"scope", "frame"}});
      return;
    }
    emit({{"result", "countermodel"}, {"scope", "frame"}, {"at", M.frame.name(cm->point)},
          {"valuation", io::valuation_json(M.frame, cm->valuation)}});
    code = 1;
  });

  // frame-verify
  auto* c_fv = app.add_subcommand("frame-verify", "check frame conditions and principles");
  std::vector<std::string> conds, principles;
  c_fv->add_option("--frame,--model", frame_path)->required();
  c_fv->add_option("--cond", conds, "frame condition names (default: all that apply)");
  c_fv->add_option("--principle", principles, "principle ids or numbers to verify semantically");
  c_fv->callback([&] {
    auto F = io::frame_from_json(io::read_file(frame_path));
    std::vector<FrameCondition> todo;
    for (const auto& s : conds) {
      auto c = frame_condition_from_string(s);
      if (!c) throw ValidationError("unknown frame condition " + s);
      todo.push_back(*c);
    }
    if (conds.empty() && principles.empty()) {
      if (F.has_i())
        for (auto c : {FrameCondition::IRegularity, FrameCondition::DTotal, FrameCondition::Factivity,
                       FrameCondition::Knowability})
          todo.push_back(c);
      if (F.has_bool_family()) todo.push_back(FrameCondition::GroundingKey);
      if (F.has_selection()) {
        todo.push_back(FrameCondition::CRegularity);
        for (auto c : selection_conditions()) todo.push_back(c);
      }
    }
    json out = json::object();
    if (auto w = check_prop_closure(F)) {
      out["prop_closure"] = io::witness_json(F, *w);
      code = 1;
    } else {
      out["prop_closure"] = "ok";
    }
    json cj = json::object();
    for (auto c : todo) {
      if (auto w = check_condition(F, c)) {
        cj[to_string(c)] = io::witness_json(F, *w);
        code = 1;
      } else {
        cj[to_string(c)] = "ok";
      }
    }
    out["conditions"] = cj;
    json pj = json::object();
    for (const auto& id : principles) {
      std::vector<const PrincipleSchema*> list;
      if (!id.empty() && std::all_of(id.begin(), id.end(), ::isdigit))
        list = principles_numbered(std::stoi(id));
      else if (auto* s = find_principle(id))
        list.push_back(s);
      if (list.empty()) throw ValidationError("unknown principle " + id);
      for (const auto* s : list) {
        auto fail = verify_principle(F, *s, cfg.instance_cap);
        if (!fail) {
          pj[s->id] = "holds";
          continue;
        }
        pj[s->id] = {{"at", F.name(fail->point)},
                     {"substitution", io::valuation_json(F, fail->substitution)},
                     {"conclusion", print_sequent(s->conclusions[fail->conclusion])}};
        code = 1;
      }
    }
    if (!principles.empty()) out["principles"] = pj;
    emit(out);
  });

  // lattice-verify
  auto* c_lv = app.add_subcommand("lattice-verify", "check ortholattice axioms and named properties");
  std::vector<std::string> props;
  c_lv->add_option("--lattice", lattice_path)->required();
  c_lv->add_option("--property", props, "property names (default: all that apply)");
  c_lv->callback([&] {
    auto L = io::lattice_from_json(io::read_file(lattice_path));
    std::vector<LatticeProperty> todo;
    for (const auto& s : props) {
      auto p = lattice_property_from_string(s);
      if (!p) throw ValidationError("unknown lattice property " + s);
      todo.push_back(*p);
    }
    if (props.empty())
      for (auto p : all_lattice_properties()) {
        bool box = p == LatticeProperty::Modal || p == LatticeProperty::D || p == LatticeProperty::T ||
                   p == LatticeProperty::Wittgenstein || p == LatticeProperty::Four || p == LatticeProperty::Five ||
                   p == LatticeProperty::B;
        if (box && !L.has_box()) continue;
        if (p == LatticeProperty::BooleanBlockOK && !L.has_bool_block()) continue;
        if (p == LatticeProperty::ArrowNormal && !L.has_arrow()) continue;
        todo.push_back(p);
      }
    json out = json::object();
    for (auto p : todo) {
      auto w = check_property(L, p);
      if (!w) {
        out[to_string(p)] = "holds";
        continue;
      }
      json el = json::array();
      for (int a : w->elems) el.push_back(L.name(a));
      out[to_string(p)] = {{"witness", el}, {"what", w->what}};
    }
    emit(out);
    // A failing named property is information, not an error, unless it was asked for.
    if (!props.empty())
      for (auto p : todo)
        if (check_property(L, p)) code = 1;
  });

  // lattice-of
  auto* c_lo = app.add_subcommand("lattice-of", "proposition lattice of a frame");
  bool count_only = false;
  c_lo->add_option("--frame,--model", frame_path)->required();
  c_lo->add_flag("--count-only", count_only);
  c_lo->callback([&] {
    auto P = proposition_lattice(io::frame_from_json(io::read_file(frame_path)));
    if (count_only) {
      std::cout << P.lattice.size() << "\n";
      return;
    }
    emit(io::to_json(P.lattice));
  });

  // represent
  auto* c_rep = app.add_subcommand("represent", "frame on the join-irreducibles of a lattice, with round-trip check");
  c_rep->add_option("--lattice", lattice_path)->required();
  c_rep->callback([&] {
    auto L = io::lattice_from_json(io::read_file(lattice_path));
    auto F = frame_from_lattice(L);
    auto back = proposition_lattice(F).lattice;
    auto iso = iso_check(L.plain(), back.plain());
    emit({{"frame", io::to_json(F)}, {"round_trip", iso.has_value()}});
    if (!iso) code = 1;
  });

  // product
  auto* c_prod = app.add_subcommand("product", "product of two relational frames or models");
  std::string left_path, right_path;
  c_prod->add_option("left", left_path)->required();
  c_prod->add_option("right", right_path)->required();
  c_prod->callback([&] {
    auto A = io::model_from_json(io::read_file(left_path)), B = io::model_from_json(io::read_file(right_path));
    auto P = product(A.frame, B.frame);
    Model M;
    M.frame = P.frame;
    std::set<std::string> vars;
    for (const auto& kv : A.valuation) vars.insert(kv.first);
    for (const auto& kv : B.valuation) vars.insert(kv.first);
    // A variable holds at (a,b) when it holds at a or at b.
    for (const auto& v : vars) {
      Mask m = 0;
      for (std::size_t k = 0; k < P.origin.size(); ++k) {
        auto [a, b] = P.origin[k];
        if ((A.valuation.count(v) && has(A.valuation[v], a)) || (B.valuation.count(v) && has(B.valuation[v], b)))
          m |= bit(static_cast<int>(k));
      }
      M.valuation[v] = m;
    }
    emit(io::to_json(M));
  });

  // functionalize
  auto* c_fun = app.add_subcommand("functionalize", "replace accessibility by an information function");
  c_fun->add_option("--frame,--model", frame_path)->required();
  c_fun->callback([&] {
    auto M = io::model_from_json(io::read_file(frame_path));
    std::vector<std::string> names;
    std::vector<Mask> props;
    for (const auto& [k, v] : M.valuation) {
      names.push_back(k);
      props.push_back(v);
    }
    Model out;
    out.frame = relational_to_functional(M.frame, &props);
    out.bool_atoms = M.bool_atoms;
    for (std::size_t k = 0; k < names.size(); ++k) out.valuation[names[k]] = props[k];
    emit(io::to_json(out));
  });

  // proof-check
  auto* c_pc = app.add_subcommand("proof-check", "check a derivation script");
  std::string deriv_path, logic = "O";
  std::vector<std::string> toggles;
  c_pc->add_option("derivation", deriv_path)->required();
  c_pc->add_option("--logic", logic, "O, EO, EOplus, CondModal, CondEpistemic (overrides the script)");
  c_pc->add_option("--toggle", toggles);
  c_pc->callback([&] {
    auto j = io::read_file(deriv_path);
    auto d = io::derivation_from_json(j);
    LogicProfile p = make_profile(logic, toggles, cfg.rk_cap);
    if (j.is_object() && j.contains("profile") && !c_pc->count("--logic")) {
      p = io::profile_from_json(j.at("profile"));
      p.toggles.insert(toggles.begin(), toggles.end());
    }
    if (d.steps.empty()) throw ValidationError("empty derivation");
    if (auto err = check_derivation(p, d)) {
      emit({{"result", "rejected"}, {"step", err->step}, {"what", err->what}});
      code = 1;
      return;
    }
    emit({{"result", "ok"}, {"conclusion", print_sequent(d.steps.back().seq)}, {"steps", d.steps.size()}});
  });

  // prove
  auto* c_prove = app.add_subcommand("prove", "bounded forward proof search, or replay a bundled derivation");
  std::string seq_text, bundled;
  std::vector<std::string> hints;
  bool list_bundled = false;
  c_prove->add_option("sequent", seq_text, "\"lhs |- rhs\"");
  c_prove->add_option("--logic", logic);
  c_prove->add_option("--toggle", toggles);
  c_prove->add_option("--hint", hints, "extra formulas for the search universe");
  c_prove->add_option("--bundled", bundled, "name of a bundled derivation");
  c_prove->add_flag("--list", list_bundled, "list bundled derivations");
  add_bool(c_prove);
  c_prove->callback([&] {
    if (list_bundled) {
      json out = json::array();
      for (const auto& n : bundled_names()) {
        const auto* b = find_bundled(n);
        out.push_back({{"name", n}, {"found", b != nullptr}});
      }
      emit(out);
      return;
    }
    if (!bundled.empty()) {
      const auto* b = find_bundled(bundled);
      if (!b) {
        auto names = bundled_names();
        if (std::find(names.begin(), names.end(), bundled) == names.end())
          throw ValidationError("unknown bundled derivation " + bundled);
        emit({{"result", "unknown"}, {"name", bundled}});
        code = 1;
        return;
      }
      auto err = check_derivation(b->profile, b->derivation);
      emit({{"result", err ? "rejected" : "ok"},
            {"goal", print_sequent(b->goal)},
            {"profile", io::to_json(b->profile)},
            {"derivation", io::to_json(b->derivation)}});
      if (err) code = 1;
      return;
    }
    if (seq_text.empty()) throw ValidationError("prove needs a sequent or --bundled");
    auto p = make_profile(logic, toggles, cfg.rk_cap);
    auto goal = parse_sequent(seq_text, bool_atoms);
    std::vector<Formula> seeds{goal.lhs, goal.rhs};
    for (const auto& h : hints) seeds.push_back(parse(h, bool_atoms));
    SaturateStats st;
    auto d = saturate(p, goal, make_bound(seeds), bool_atoms, &st);
    json stats{{"universe", st.universe}, {"derived", st.derived}, {"rounds", st.rounds}};
    if (!d) {
      emit({{"result", "unknown"}, {"stats", stats}});
      code = 1;
      return;
    }
    emit({{"result", "proved"}, {"stats", stats}, {"derivation", io::to_json(*d)}});
  });

  // prob-verify
  auto* c_pv = app.add_subcommand("prob-verify", "check a lattice measure or per-possibility measures");
  std::string gap;
  c_pv->add_option("--lattice", lattice_path, "lattice document with \"measure\"");
  c_pv->add_option("--frame", frame_path, "frame document with \"measures\"");
  c_pv->add_option("--gap", gap, "a,b: total probability gap for elements a and b");
  c_pv->callback([&] {
    if (!lattice_path.empty()) {
      auto j = io::read_file(lattice_path);
      auto L = io::lattice_from_json(j);
      if (!j.contains("measure")) throw ValidationError("lattice document has no measure");
      auto mu = io::measure_from_json(L, j.at("measure"));
      json out;
      if (auto w = check_measure(L, mu)) {
        json el = json::array();
        for (int a : w->elems) el.push_back(L.name(a));
        out["measure"] = {{"witness", el}, {"what", w->what}};
        code = 1;
      } else {
        out["measure"] = "ok";
      }
      if (!L.has_box()) {
        out["introspective"] = nullptr;
      } else if (auto bad = introspection_failure(L, mu)) {
        out["introspective"] = {{"witness", L.name(*bad)}};
        code = 1;
      } else {
        out["introspective"] = true;
      }
      if (!gap.empty()) {
        auto comma = gap.find(',');
        if (comma == std::string::npos) throw ValidationError("--gap expects a,b");
        int a = L.index(gap.substr(0, comma)), b = L.index(gap.substr(comma + 1));
        if (a < 0 || b < 0) throw ValidationError("unknown element in --gap");
        auto [lhs, rhs] = total_probability_gap(L, mu, a, b);
        out["gap"] = {format_rational(lhs), format_rational(rhs)};
      }
      emit(out);
      return;
    }
    if (frame_path.empty()) throw ValidationError("prob-verify needs --lattice or --frame");
    auto j = io::read_file(frame_path);
    auto F = io::frame_from_json(j);
    if (!j.contains("measures")) throw ValidationError("frame document has no measures");
    auto P = proposition_lattice(F);
    auto PA = io::assignment_from_json(F, P, j.at("measures"));
    json out;
    if (auto w = check_assignment(F, P, PA)) {
      out["assignment"] = {{"what", w->what}};
      code = 1;
      emit(out);
      return;
    }
    out["assignment"] = "ok";
    json cj = json::object();
    for (auto c : all_prob_conditions()) {
      if (!F.has_i() && (c == ProbCondition::AllOne)) continue;
      auto w = check_prob_condition(F, P, PA, c);
      if (!w) {
        cj[to_string(c)] = "ok";
        continue;
      }
      json pts = json::array();
      for (int x : w->points) pts.push_back(F.name(x));
      json sets = json::array();
      for (Mask A : w->sets) sets.push_back(io::set_json(F, A));
      cj[to_string(c)] = {{"points", pts}, {"sets", sets}, {"what", w->what}};
    }
    out["conditions"] = cj;
    emit(out);
  });

  // search
  auto* c_search = app.add_subcommand("search", "bounded countermodel search");
  std::string cls = "epistemic", schema;
  int min_size = 1, max_size = -1;
  std::uint64_t budget = 0;
  std::vector<std::string> hunt;
  bool do_hunt = false;
  c_search->add_option("--goal", seq_text, "\"lhs |- rhs\"");
  c_search->add_option("--schema", schema, "principle id");
  c_search->add_option("--class", cls, "compatibility or epistemic");
  c_search->add_option("--min-size", min_size);
  c_search->add_option("--max-size", max_size);
  c_search->add_option("--budget", budget);
  c_search->add_flag("--hunt", do_hunt, "Qualified Collapse hunt over conditional frames");
  c_search->add_option("--principles", hunt, "principles (or paired constraints) for --hunt");
  add_bool(c_search);
  c_search->callback([&] {
    SearchResult r;
    if (do_hunt) {
      HuntSpec h;
      h.principles.insert(hunt.begin(), hunt.end());
      h.min_size = min_size;
      h.max_size = max_size > 0 ? max_size : cfg.hunt_max_size;
      h.budget = budget ? budget : cfg.hunt_budget;
      h.threads = cfg.threads;
      r = qualified_collapse_hunt(h);
    } else {
      SearchSpec s;
      auto c = frame_class_from_string(cls);
      if (!c || *c == FrameClass::Conditional) throw ValidationError("search class must be compatibility or epistemic");
      s.cls = *c;
      if (!seq_text.empty()) s.goal = parse_sequent(seq_text, bool_atoms);
      if (!schema.empty()) {
        const auto* p = find_principle(schema);
        if (!p) throw ValidationError("unknown principle " + schema);
        s.schema = *p;
      }
      if (s.goal.has_value() == s.schema.has_value()) throw ValidationError("search needs exactly one of --goal, --schema");
      s.bool_atoms = bool_atoms;
      s.min_size = min_size;
      s.max_size = max_size > 0 ? max_size : cfg.search_max_size;
      s.budget = budget ? budget : cfg.search_budget;
      s.threads = cfg.threads;
      r = find_countermodel(s);
    }
    emit(io::to_json(r));
    if (r.status == SearchResult::Status::Found) code = 1;
    if (r.status == SearchResult::Status::BudgetExhausted) code = 3;
  });

  // principles
  auto* c_pr = app.add_subcommand("principles", "list the principle library");
  c_pr->callback([&] {
    json out = json::array();
    for (const auto& s : principle_library()) {
      json prem = json::array(), conc = json::array();
      for (const auto& q : s.premises) prem.push_back(print_sequent(q));
      for (const auto& q : s.conclusions) conc.push_back(print_sequent(q));
      json e{{"id", s.id}, {"number", s.number}, {"premises", prem}, {"conclusions", conc}, {"bool_vars", s.bool_vars}};
      if (auto c = paired_condition(s.id); c && s.number) e["constraint"] = to_string(*c);
      out.push_back(e);
    }
    emit(out);
  });

  // export-dot
  auto* c_dot = app.add_subcommand("export-dot", "DOT for a frame or a lattice Hasse diagram");
  c_dot->add_option("--frame,--model", frame_path);
  c_dot->add_option("--lattice", lattice_path);
  c_dot->callback([&] {
    if (!lattice_path.empty())
      std::cout << io::lattice_dot(io::lattice_from_json(io::read_file(lattice_path)));
    else if (!frame_path.empty())
      std::cout << io::frame_dot(io::frame_from_json(io::read_file(frame_path)));
    else
      throw ValidationError("export-dot needs --frame or --lattice");
  });

  // fixtures
  auto* c_fx = app.add_subcommand("fixtures", "emit bundled fixtures as JSON");
  std::string emit_name;
  c_fx->add_option("--emit", emit_name, "fixture name");
  c_fx->callback([&] {
    if (emit_name.empty()) {
      for (const auto& n : fixtures::fixture_names()) std::cout << n << "\n";
      return;
    }
    emit(io::fixture_json(emit_name));
  });

  // Options are parsed before callbacks run, so the config and shared flags
  // are applied in a pre-callback hook.
  app.parse_complete_callback([&] {
    if (!config_path.empty()) load_config(cfg, config_path);
    if (threads > 0) cfg.threads = threads;
    bool_atoms = split_names(bool_csv);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  }
  return code;
}
