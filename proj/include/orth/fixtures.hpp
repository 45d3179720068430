#pragma once

#include <string>
#include <vector>

#include "orth/frame.hpp"
#include "orth/lattice.hpp"
#include "orth/probability.hpp"
#include "orth/semantics.hpp"

namespace orth::fixtures {

// Lattices. Element orders are fixed so that property witnesses are stable.
Ortholattice two();     // {0,1}
Ortholattice o6();      // 0,a,b,~a,~b,1 with a < b
Ortholattice mo2();     // 0,a,~a,b,~b,1
Ortholattice fig1();    // ten-element epistemic ortholattice generated by p

// Values of the published introspective measure on fig1(), in fig1() order.
Measure fig1_measure();

// Frames.
Frame chain(int n, const std::string& prefix = "x");  // path x1 - x2 - ... - xn
Frame cycle4();                                       // w1 - w2 - w3 - w4 - w1
Model scale();                                        // functional Epistemic Scale, V(p) = {x1,x2}
Model scale_relational();                             // 5-chain with accessibility
Model grid();                                         // relational product of two scales
Model grid_cut();                                     // grid without (x4,y4) R (x3,y3)
// 8-point conditional frame with p, q. as_printed keeps the two selection
// entries c(y,A), c(z,A) for A = {x1,x5,u} exactly as published (x1, x5);
// the default uses u for both, the only values consistent with the arrow table.
Model conditional(bool as_printed = false);

// Constructed per-possibility measures for the Scale (two-valued: every valid
// measure on that lattice is fixed by mu(p), and only 0/1 are introspective).
ProbAssignment scale_assignment(const PropLattice& P);
// Two incompatible worlds with identity i and point masses: satisfies AllOne,
// SomeNonzero, Sharp and Knowability_P.
Frame two_worlds();
ProbAssignment two_worlds_assignment(const PropLattice& P);

// Names accepted by `fixtures --emit`.
std::vector<std::string> fixture_names();

}  // namespace orth::fixtures
