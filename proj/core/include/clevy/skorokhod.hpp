#pragma once

#include <vector>

#include "clevy/eta.hpp"
#include "clevy/frac_ops.hpp"
#include "clevy/kernels.hpp"
#include "clevy/residual.hpp"
#include "clevy/stats.hpp"
#include "clevy/stransform.hpp"

namespace clevy {

// ∫_0^T M(t) M°(dt) = ½ [M(T)² - sum_{s_j <= T} f(T, s_j)² x_j²].
double skorokhod_quadratic(const VolterraKernel& k, const JumpPath& path, double T);
PathFunctional functional_skorokhod_quadratic(const VolterraKernel& k, double T);

// S(2∫_0^T M M°)(eta) by Monte Carlo against S(M(T))(eta)².
IdentityResidual quadratic_stransform_check(const VolterraKernel& k, const JumpMeasure& measure,
                                            double T, const EtaTest& eta,
                                            const EnsembleConfig& cfg, double sigmas);

// S(M(b) - M(a))(eta) by Monte Carlo against ∫_a^b d/dt S(M(t))(eta) dt.
IdentityResidual increment_check(const VolterraKernel& k, const JumpMeasure& measure, double a,
                                 double b, const EtaTest& eta, const EnsembleConfig& cfg,
                                 double sigmas);

// Correction term sum_{s_j <= a} f(a, s_j) (f(b, s_j) - f(a, s_j)) x_j².
double memory_correction(const VolterraKernel& k, const JumpPath& path, double a, double b);

// E^{Q_eta} of the correction: ∫ f(a,s)(f(b,s) - f(a,s)) ∫ y² (1 + eta(y,s)) nu(dy) ds.
double memory_correction_expectation(const VolterraKernel& k, const JumpMeasure& measure,
                                     double a, double b, const EtaTest& eta);

struct MemoryCorrectionReport {
  // S(M(a)(M(b) - M(a))) against S(M(a)) [S(M(b)) - S(M(a))] + S(correction).
  IdentityResidual product_rule;
  // S(correction) by Monte Carlo against its quadrature.
  IdentityResidual correction_mean;
};

// M(a) ∫_a^b M°(dt) = ∫_a^b M(a) M°(dt) + correction, through S-transforms.
MemoryCorrectionReport memory_correction_check(const VolterraKernel& k,
                                               const JumpMeasure& measure, double a, double b,
                                               const EtaTest& eta, const EnsembleConfig& cfg,
                                               double sigmas);

struct WienerPair {
  double lhs = 0.0;  // ∫ (I_-^d g)(s) L(ds)
  double rhs = 0.0;  // ∫ g(t) M_d(dt), through the kernel derivative
};

// Wiener-type integral of a deterministic g (supported in [0, ∞)) against the
// fractional process with the given kernel, computed along two independent
// quadrature routes.
WienerPair wiener_type_equiv(const SampledFunction& g, const VolterraKernel& fractional,
                             const JumpPath& path);

// Zero-mean check under P for each functional: |mean| <= sigmas * stderr.
std::vector<IdentityResidual> zero_expectation_suite(const std::vector<PathFunctional>& xs,
                                                     const JumpMeasure& measure,
                                                     const EnsembleConfig& cfg, double sigmas);

}  // namespace clevy
