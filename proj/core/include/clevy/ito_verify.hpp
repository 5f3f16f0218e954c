#pragma once

#include <complex>
#include <string>
#include <vector>

#include "clevy/eta.hpp"
#include "clevy/kernels.hpp"
#include "clevy/levy.hpp"
#include "clevy/quadrature.hpp"
#include "clevy/residual.hpp"
#include "clevy/stats.hpp"
#include "clevy/stransform.hpp"

namespace clevy {

// G(y) = exp(-y² / (2 sigma²)), a member of the Wiener algebra with
// FG(u) = sigma exp(-sigma² u² / 2) (unitary Fourier convention).
struct GaussianG {
  double sigma = 1.0;

  double operator()(double y) const;
  double d1(double y) const;  // G'
  double fourier(double u) const;
  // |u| beyond which (1 + |u|)^3 FG(u) < 1e-16.
  double u_cutoff() const;
  std::string id() const;
};

// Integrands of d/dt S(G(M(t)))(eta) = (I) + (II) + (III) at one time t.
struct ItoRates {
  double jump = 0.0;    // (I)
  double memory = 0.0;  // (II)
  double drift = 0.0;   // (III) = S(G'(M(t)))(eta) d/dt S(M(t))(eta)
  // Pieces of the Itô-I arrangement:
  double jump_full = 0.0;    // ∫ S(G(M + x f(t,t)) - G(M))(eta) (1 + eta(x,t)) nu(dx)
  double memory_full = 0.0;  // ∫∫ x d/dt f(t,s) S(G'(M + x f(t,s)))(eta) (1 + eta(x,s)) nu(dx) ds
  double sg_prime = 0.0;     // S(G'(M(t)))(eta)
  double coeff = 0.0;        // f(t,t) + ∫ d/dt f(t,s) ds (on the s-rule)
  double total() const { return jump + memory + drift; }
};

struct ItoTerms {
  double lhs = 0.0;       // S(G(M(T)))(eta) - G(0)
  double term_i = 0.0;    // jump-sum term
  double term_ii = 0.0;   // memory term (N° integral)
  double term_iii = 0.0;  // M° integral
  // Itô-I arrangement of the same integrals.
  double jump_full = 0.0;
  double memory_full = 0.0;
  double drift_full = 0.0;  // ∫_0^T S(G'(M(t)))(eta) (f(t,t) + ∫ d/dt f ds) dt
  double first_moment = 0.0;

  double rhs() const { return term_i + term_ii + term_iii; }
  // jump_full + memory_full - (∫ x nu) drift_full
  double rhs_ito1() const { return jump_full + memory_full - first_moment * drift_full; }
};

struct ItoOptions {
  double u_step = 0.1;
  double t_ratio = 0.2;      // geometric grading toward t = 0 (fractional kernels)
  double t_floor = 1e-10;    // smallest graded t-panel, relative to T
};

// Fixed s-rule on the support of f(t, ·); lags hold t - s.  Fractional
// kernels use s = t - v^{1/d} on [0, t] and s = -w^{1/d} on [-1, 0), which
// remove the power singularities at s = t and s = 0.
quad::Rule kernel_s_rule(const VolterraKernel& k, double t);

// Fourier engine for S-transforms of G(M(t)) and the Itô-formula terms.
// Lévy measures with densities are replaced by their discretisation.
class ItoEngine {
 public:
  ItoEngine(VolterraKernel k, const JumpMeasure& measure, EtaTest eta, GaussianG g,
            ItoOptions opts = {});

  // S(G(M(t)))(eta) by the inverse Fourier route.
  double s_of_G(double t) const;
  // E^{Q_eta}[e^{iuM(t)}] on the engine's fixed rules.
  std::complex<double> charfn(double t, double u) const;
  ItoRates rates(double t) const;
  ItoTerms terms(double T) const;

  const VolterraKernel& kernel() const { return k_; }

 private:
  struct Slice;
  Slice slice(double t) const;

  VolterraKernel k_;
  JumpMeasure measure_;
  std::vector<Atom> atoms_;
  EtaTest eta_;
  GaussianG g_;
  ItoOptions opts_;
  std::vector<double> u_nodes_;
  std::vector<double> u_weights_;
  double first_moment_ = 0.0;
};

// S(G(M(t)))(eta), convenience wrapper.
double s_of_G_of_M(const VolterraKernel& k, const JumpMeasure& measure, double t,
                   const EtaTest& eta, const GaussianG& g);

// M(t-) = sum_{s_j < t} f(t, s_j) x_j + drift ∫ f(t, s) ds.
double conv_value_left(const VolterraKernel& k, const JumpPath& path, double t);

// sum_{0 < s_j <= T} G(M(s_j)) - G(M(s_j-)) - G'(M(s_j-)) ΔM(s_j).
double ito_jump_sum(const VolterraKernel& k, const JumpPath& path, const GaussianG& g, double T);

// G(M(T)) - G(0) + (∫ x nu) ∫_0^T G'(M(t)) (f(t,t) + ∫ d/dt f ds) dt
//   - sum_{0 < s_j <= T} [G(M(s_j)) - G(M(s_j-))].
// For kernels with d/dt f = 0 this is identically 0.
double ito1_pathwise_remainder(const VolterraKernel& k, const JumpPath& path, const GaussianG& g,
                               double T, double first_moment);

struct Ito2Report {
  ItoTerms terms;
  IdentityResidual identity;      // lhs vs (i) + (ii) + (iii), quadrature only
  IdentityResidual jump_mc;       // S(jump sum) by Monte Carlo vs (i)
  IdentityResidual remainder_mc;  // S(G(M(T)) - G(0) - jump sum) by Monte Carlo vs (ii) + (iii)
};

// Itô formula II for one eta.  rel_tol scales with |lhs|.
Ito2Report ito2_residual(const VolterraKernel& k, const JumpMeasure& measure, const GaussianG& g,
                         double T, const EtaTest& eta, const EnsembleConfig& cfg, double rel_tol,
                         double sigmas);

// Same cached integrals arranged as in Itô formula I; pure round-off.
IdentityResidual ito1_from_ito2_rearrangement_check(const VolterraKernel& k,
                                                    const JumpMeasure& measure,
                                                    const GaussianG& g, double T,
                                                    const EtaTest& eta, double tol);

// Central differences of S(G(M(t))) against (I) + (II) + (III), max over `ts`.
IdentityResidual derivative_consistency(const VolterraKernel& k, const JumpMeasure& measure,
                                        const GaussianG& g, const EtaTest& eta,
                                        const std::vector<double>& ts, double tol);

// Itô formula I in expectation (eta = 0): E[ito1_pathwise_remainder] against the
// compensator of the N° term.  Throws PreconditionError when ∫|x| nu = inf.
// abs_tol floors the tolerance where both sides vanish up to rounding.
IdentityResidual ito1_residual(const VolterraKernel& k, const JumpMeasure& measure,
                               const GaussianG& g, double T, const EnsembleConfig& cfg,
                               double sigmas, double abs_tol);

// max over paths of |ito1_pathwise_remainder| for a kernel with d/dt f = 0.
IdentityResidual telescoping_check(const VolterraKernel& k, const JumpMeasure& measure,
                                   const GaussianG& g, double T, const EnsembleConfig& cfg,
                                   double tol);

}  // namespace clevy
