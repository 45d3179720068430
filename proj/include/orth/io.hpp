#pragma once

#include <string>

#include "json.hpp"

#include "orth/frame.hpp"
#include "orth/lattice.hpp"
#include "orth/probability.hpp"
#include "orth/proof.hpp"
#include "orth/search.hpp"
#include "orth/semantics.hpp"

namespace orth::io {

using nlohmann::json;

// Lattice document: {"elements":[names], "leq":[[i,j],...], "neg":{"i":j},
// "box":{"i":j}?, "bool":[i,...]?, "arrow":{"i,j":k}?}. Indices may also be
// given as element names. leq is written as the Hasse covers.
json to_json(const Ortholattice& L);
Ortholattice lattice_from_json(const json& j);

// Frame document: {"possibilities":[names], "compat":[[a,b],...], "i":{x:y}?,
// "R":{x:[names]}?, "bool_family":[[names],...]?, "prop_family":[[names],...]?,
// "selection":[{"at":x,"antecedent":[names],"to":y},...]?}.
json to_json(const Frame& F);
Frame frame_from_json(const json& j);

// Model document: frame document plus "valuation" and "bool_atoms".
json to_json(const Model& M);
Model model_from_json(const json& j);

// Lattice measure: "measure":{element-name:"n/d"} next to a lattice document.
json measure_to_json(const Ortholattice& L, const Measure& mu);
Measure measure_from_json(const Ortholattice& L, const json& j);

// Per-possibility measures: "measures":{x:[{set-name:"n/d",...},...]} next to
// a frame document; set names are those of the proposition lattice.
json assignment_to_json(const Frame& F, const PropLattice& P, const ProbAssignment& PA);
ProbAssignment assignment_from_json(const Frame& F, const PropLattice& P, const json& j);

// Derivation script: either a bare list of steps or {"profile":..., "goal":...,
// "bool_atoms":[...], "steps":[...]}. A step is {"seq":"a |- b", "by":rule,
// "from":[indices], "subst":{metavar:formula}}.
json to_json(const Derivation& d);
Derivation derivation_from_json(const json& j);
json to_json(const LogicProfile& p);
LogicProfile profile_from_json(const json& j);

json to_json(const SearchResult& r);
json witness_json(const Frame& F, const FrameWitness& w);
json set_json(const Frame& F, Mask A);
json valuation_json(const Frame& F, const std::map<std::string, Mask>& v);

// DOT output. Frames: compatibility edges solid, strict refinement dashed
// (y -> x when y refines x), the information function as edges tagged
// kind="i". Lattices: Hasse diagram, bottom at the bottom.
std::string frame_dot(const Frame& F);
std::string lattice_dot(const Ortholattice& L);

// Named fixture as a JSON document (lattice, frame, model or measure).
json fixture_json(const std::string& name);

json read_file(const std::string& path);

}  // namespace orth::io
