#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "clevy/eta.hpp"
#include "clevy/kernels.hpp"
#include "clevy/levy.hpp"
#include "clevy/residual.hpp"
#include "clevy/stats.hpp"

namespace clevy {

enum class SMethod { Reweight, Shifted, Analytic };
const char* to_string(SMethod method);

// Estimate of S(X)(eta) = E^{Q_eta}[X].
struct STransformEstimate {
  std::complex<double> value;
  double std_error = 0.0;  // hypot of the real and imaginary standard errors
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  SMethod method = SMethod::Analytic;
  std::size_t n = 0;
};

// A random variable given as a function of the jump path.  Jumps outside
// `window` must not influence the value.
struct PathFunctional {
  std::string name;
  Interval window;
  std::function<std::complex<double>(const JumpPath&)> eval;
};

// E[W_eta X] under P, W_eta the Wick exponential.  Paths are simulated on
// the hull of the functional windows and the time support of eta.
std::vector<STransformEstimate> stransform_reweight(const std::vector<PathFunctional>& xs,
                                                    const EtaTest& eta,
                                                    const JumpMeasure& measure,
                                                    const EnsembleConfig& cfg);

// E[X] with the jumps simulated under Q_eta (intensity (1 + eta) nu dt).
std::vector<STransformEstimate> stransform_shifted(const std::vector<PathFunctional>& xs,
                                                   const EtaTest& eta,
                                                   const JumpMeasure& measure,
                                                   const EnsembleConfig& cfg);

// Common functionals.
PathFunctional functional_M(const VolterraKernel& k, double t);
PathFunctional functional_M_power(const VolterraKernel& k, double t, int power);
PathFunctional functional_exp_iuM(const VolterraKernel& k, double t, double u);
// Signed Wick exponential exp°(I(f)) = e^{-∫∫ f nu dt} prod_j (1 + f(x_j, s_j)).
PathFunctional functional_wick(const EtaTest& f, const JumpMeasure& measure);

// ∫ y eta(y, s) nu(dy) = A q(s) with A = c ∫ y p(y) nu(dy).
double eta_first_moment(const EtaTest& eta, const JumpMeasure& measure);

// S(M(t))(eta) = ∫ f(t, s) ∫ y eta(y, s) nu(dy) ds.
double s_of_M_analytic(const VolterraKernel& k, const JumpMeasure& measure, double t,
                       const EtaTest& eta);

// E^{Q_eta}[e^{iuM(t)}] = exp{iu S(M(t))(eta) +
//   ∫∫ (e^{iuxf} - 1 - iuxf)(1 + eta(x, s)) nu(dx) ds}.
std::complex<double> s_charfn_analytic(const VolterraKernel& k, const JumpMeasure& measure,
                                       double t, double u, const EtaTest& eta);

// d/dt S(M(t))(eta).  Kernels satisfying (H4):
//   ∫ d/dt f(t, s) h(s) ds + f(t, t) h(t),  h(s) = ∫ y eta(y, s) nu(dy);
// fractional kernels: (I_+^d h)(t).  Other kernels: UnsupportedError.
double ddt_s_of_M(const VolterraKernel& k, const JumpMeasure& measure, double t,
                  const EtaTest& eta);

// S(L(t))(eta) = ∫_0^t h(s) ds.
double s_of_levy(const JumpMeasure& measure, double t, const EtaTest& eta);

enum class PredictableIntegrand {
  Jump,          // X(y, t) = y, so ∫∫ X dÑ = L(T)
  JumpTimesLevy  // X(y, t) = y L(t-)
};
const char* to_string(PredictableIntegrand x);

// Pathwise value of ∫_0^T ∫ X(y, t) Ñ(dy, dt).
double ito_integral_pathwise(PredictableIntegrand x, const JumpPath& path, double T,
                             double first_moment);

// S(∫∫ X dÑ)(eta) by Monte Carlo against ∫_0^T ∫ S(X(y, t))(eta) eta(y, t) nu(dy) dt.
IdentityResidual ito_integral_stransform_check(PredictableIntegrand x, const JumpMeasure& measure,
                                               double T, const EtaTest& eta,
                                               const EnsembleConfig& cfg, double sigmas);

// D_{y,s} exp°(I(f)) = f(y, s) exp°(I(f)).
PathFunctional malliavin_wick(const EtaTest& f, const JumpMeasure& measure, double y, double s);

// S(F Ñ(A x (a, b]))(eta) for F = exp°(I(f)) against the closed form
// exp{(f, eta)} ∫_a^b ∑_{x in A} (eta + f + eta f)(x, t) nu({x}) dt.
// Needs a purely atomic measure; A lists atom sizes.
IdentityResidual simple_field_identity_check(const EtaTest& f, const std::vector<double>& atoms,
                                             double a, double b, const EtaTest& eta,
                                             const JumpMeasure& measure,
                                             const EnsembleConfig& cfg, double sigmas);

}  // namespace clevy
