#pragma once

#include <complex>
#include <vector>

#include "clevy/kernels.hpp"
#include "clevy/levy.hpp"

namespace clevy {

// Values of M(t) = ∫ f(t, s) L(ds) on a time grid.
struct ConvPath {
  std::vector<double> grid;
  std::vector<double> values;
};

// Smallest path window on which M can be evaluated up to time t.
Interval required_window(const VolterraKernel& k, double t);

// M(t) = sum_j f(t, s_j) x_j + drift * ∫ f(t, s) ds.  The path window must
// cover [s_lower, t]; jumps are never silently dropped.
double conv_value_direct(const VolterraKernel& k, const JumpPath& path, double t);
ConvPath conv_path_direct(const VolterraKernel& k, const JumpPath& path,
                          const std::vector<double>& grid);

// M(t) = f(t,t) L(t) - f(t,a) L(a) - ∫_a^t L(s) d/ds f(t,s) ds, a = s_lower.
// Requires (H1)-(H4).
double conv_value_by_parts(const VolterraKernel& k, const JumpPath& path, double t);
ConvPath conv_path_by_parts(const VolterraKernel& k, const JumpPath& path,
                            const std::vector<double>& grid);

// E[e^{iuM(t)}] = exp ∫ psi(u f(t, s)) ds.
std::complex<double> conv_charfn_analytic(const VolterraKernel& k, const JumpMeasure& measure,
                                          double t, double u);

// E[M(t)^2] = var(L(1)) ‖f(t, ·)‖².
double conv_variance_analytic(const VolterraKernel& k, const JumpMeasure& measure, double t);

struct JumpRelation {
  double max_error = 0.0;  // max |ΔM(s_j) - f(s_j, s_j) x_j|
  std::size_t checked = 0;
};

// Compares M(s_j) - M(s_j - δ) against f(s_j, s_j) x_j at every jump in (0, t_max].
JumpRelation check_jump_relation(const VolterraKernel& k, const JumpPath& path, double t_max);

}  // namespace clevy
