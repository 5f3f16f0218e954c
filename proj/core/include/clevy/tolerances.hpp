#pragma once

namespace clevy {

// Every verification threshold used by the suites.  Values here are the
// defaults; scenario files override them in [tolerances].
struct Tolerances {
  double mc_sigmas = 4.0;        // Monte Carlo checks: |lhs - rhs| <= mc_sigmas * stderr
  double route = 1e-6;           // direct vs by-parts M(t), sup over the grid
  double jump_relation = 1e-10;  // |ΔM - f(t,t) ΔL|
  double frac_identity = 1e-5;   // fractional kernel as I_-^d of an indicator
  double frac_parts = 1e-5;      // fractional integration by parts
  double wiener = 1e-4;          // pathwise Wiener-type integral equivalence
  double derivative = 1e-4;      // d/dt S(G(M(t))) against the rate decomposition
  double ito2_rel = 1e-3;        // Itô II, relative to |lhs|
  double rearrangement = 1e-8;   // Itô I regrouping of the Itô II terms
  double telescoping = 1e-10;    // pathwise Itô I, indicator kernel
  double quad_rel = 1e-10;       // adaptive quadrature target
};

}  // namespace clevy
