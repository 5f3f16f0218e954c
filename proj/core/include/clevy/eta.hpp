#pragma once

#include <string>

#include "clevy/levy.hpp"
#include "clevy/random.hpp"

namespace clevy {

enum class EtaFlavor { Even, Odd };

// Separable test field eta(x, t) = c p(x) q(t) with
//   p(x) = x^2 e^{-x^2} (even) or x^3 e^{-x^2} (odd),  q(t) = e^{-t^2/w}.
// builtin() enforces eta > -1 (admissible test functions); field() does not
// and is used for the signed Wick exponentials exp°(I(f)).
class EtaTest {
 public:
  EtaTest() = default;

  static EtaTest builtin(double c, double w, EtaFlavor flavor);
  static EtaTest field(double c, double w, EtaFlavor flavor);
  static EtaTest zero() { return {}; }

  double operator()(double x, double t) const { return c_ * x_profile(x) * time_profile(t); }
  double x_profile(double x) const;   // p(x)
  double time_profile(double t) const;  // q(t)

  double amplitude() const { return c_; }
  double width() const { return w_; }
  EtaFlavor flavor() const { return flavor_; }
  bool is_zero() const { return c_ == 0.0; }

  // |eta| < 1e-13 outside [-R, R] in time.
  Interval time_support() const { return {-radius_, radius_}; }
  double sup() const;  // sup over (x, t)
  double inf() const;

  // ∫ weight(x) c p(x) nu(dx)
  double x_integral(const JumpMeasure& measure, double (*weight)(double)) const;
  // ∫_a^b q(t) dt by quadrature
  double time_integral(double a, double b) const;

  std::string id() const;

 private:
  EtaTest(double c, double w, EtaFlavor flavor);

  double c_ = 0.0;
  double w_ = 1.0;
  EtaFlavor flavor_ = EtaFlavor::Even;
  double radius_ = 0.0;
};

// max_x |p(x)|: e^{-1} for the even profile, (3/2)^{3/2} e^{-3/2} for the odd one.
double profile_max(EtaFlavor flavor);

// ∫∫ eta nu(dx) dt, the compensator of I_1(eta).
double eta_compensator(const EtaTest& eta, const JumpMeasure& measure);

// (eta, eta~) in L²(nu x dt).
double eta_pairing(const EtaTest& a, const EtaTest& b, const JumpMeasure& measure);

// Wick exponential with a precomputed compensator.
class WickWeight {
 public:
  WickWeight(EtaTest eta, const JumpMeasure& measure);

  // exp{sum_j log(1 + eta(x_j, s_j)) - ∫∫ eta nu dt}.  The path window must
  // cover the time support of eta.
  double operator()(const JumpPath& path) const;
  // Signed product form e^{-∫∫ eta nu dt} prod_j (1 + eta(x_j, s_j)); valid
  // for fields that may reach -1.
  double product(const JumpPath& path) const;

  const EtaTest& eta() const { return eta_; }
  double compensator() const { return comp_; }

 private:
  void require_cover(const JumpPath& path) const;

  EtaTest eta_;
  double comp_ = 0.0;
};

// Simulates the jump measure under Q_eta, i.e. with intensity
// (1 + eta(x, t)) nu(dx) dt on `window`, by thinning a dominating Poisson
// process of rate nu(R_0) (1 + sup eta).  The path keeps the P-drift, so
// L is the same functional of the jumps as under P.
JumpPath simulate_path_shifted(const JumpMeasure& measure, const EtaTest& eta,
                               const Interval& window, const StreamKey& key);

}  // namespace clevy
