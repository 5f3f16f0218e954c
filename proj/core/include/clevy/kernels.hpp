#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "clevy/levy.hpp"

namespace clevy {

enum class KernelKind { ShotNoise, OrnsteinUhlenbeck, Fractional, Indicator, Custom };

const char* to_string(KernelKind kind);

struct Hypotheses {
  bool h1 = false;  // support inside [a, b]^2 with a <= 0 < b
  bool h2 = false;  // bounded and continuous off the diagonal
  bool h3 = false;  // diagonal limit lim_{s↑t} f(t, s) exists
  bool h4 = false;  // continuously differentiable in t off the diagonal, bounded derivative

  bool all() const { return h1 && h2 && h3 && h4; }
};

struct HypothesisReport {
  Hypotheses result;
  std::vector<std::string> witnesses;  // one line per failed check
};

// Behaviour of a concrete kernel.  Implementations only need to be exact on
// their own support; the VolterraKernel wrapper never calls them outside
// 0 <= t <= t_upper().
class KernelImpl {
 public:
  virtual ~KernelImpl() = default;

  virtual KernelKind kind() const = 0;
  virtual std::string name() const = 0;

  // f(t, t - r) for lag r = t - s.  Lags keep precision next to the diagonal.
  virtual double eval_lag(double t, double r) const = 0;
  // d/dt f(t, s) at s = t - r, r > 0.  r == 0 means the one-sided limit.
  virtual double ddt_lag(double t, double r) const = 0;
  virtual double dds(double t, double s) const = 0;
  virtual double diag(double t) const = 0;

  // f(t, ·) vanishes outside [s_lower(), t].
  virtual double s_lower() const = 0;
  // Kernel is only defined for 0 <= t <= t_upper().
  virtual double t_upper() const = 0;
  // Points in s where f(t, ·) has kinks, jumps or singularities.
  virtual std::vector<double> breakpoints(double t) const;

  // ∫ f(t, s) ds and its t-derivative.  Defaults use quadrature.
  virtual double integral(double t) const;
  virtual double integral_dt(double t) const;

  virtual Hypotheses declared() const = 0;
  // True when (t - s)^{order - 1} blows up at the diagonal (fractional).
  virtual double diagonal_order() const { return 1.0; }
};

// Value-semantic handle on an immutable kernel.
class VolterraKernel {
 public:
  VolterraKernel() = default;
  explicit VolterraKernel(std::shared_ptr<const KernelImpl> impl) : impl_(std::move(impl)) {}

  // f(t, s) = exp(-kappa (t - s)) on 0 <= s <= t <= t_star.
  static VolterraKernel ornstein_uhlenbeck(double kappa, double t_star);
  // f(t, s) = k(t - s) on 0 <= s <= t <= t_star, k(u) = sum_i c_i u^i.
  static VolterraKernel shot_noise(std::vector<double> coeffs, double t_star);
  // f(t, s) = 1_{(0, t]}(s), t <= t_star.
  static VolterraKernel indicator(double t_star);
  // f_t(s) = [(t - s)_+^d - (-s)_+^d] / Gamma(1 + d) for s >= -past_cutoff.
  static VolterraKernel fractional(double d, double past_cutoff = 20.0);
  // Stationary kernel k(t - s) tabulated at u = 0, h, 2h, ... and
  // interpolated with cubic Hermite splines; zero beyond the table.
  static VolterraKernel tabulated(std::vector<double> values, double h, double t_star,
                                  std::string name = "tabulated");
  // Arbitrary f(t, s) on 0 <= s <= t <= t_star with optional d/dt.  The
  // hypothesis flags are established numerically at construction.
  static VolterraKernel custom(std::function<double(double, double)> f,
                               std::function<double(double, double)> ddt, double t_star,
                               std::string name = "custom");

  bool valid() const { return impl_ != nullptr; }
  KernelKind kind() const { return impl_->kind(); }
  std::string name() const { return impl_->name(); }

  double eval(double t, double s) const;
  double eval_lag(double t, double r) const;
  double ddt(double t, double s) const;
  double ddt_lag(double t, double r) const;
  double dds(double t, double s) const;
  double diag(double t) const;

  double s_lower() const { return impl_->s_lower(); }
  double t_upper() const { return impl_->t_upper(); }
  std::vector<double> breakpoints(double t) const;  // sorted, within [s_lower, t]
  Interval s_support(double t) const { return {impl_->s_lower(), t}; }

  double integral(double t) const;
  double integral_dt(double t) const;
  double l2norm_sq(double t, double rel_tol = 1e-10) const;

  Hypotheses flags() const { return impl_->declared(); }
  double diagonal_order() const { return impl_->diagonal_order(); }
  const KernelImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const KernelImpl> impl_;
};

// Numerical audit of (H1)-(H4) on a test grid; failures come with witnesses.
HypothesisReport check_hypotheses(const VolterraKernel& kernel);

// ‖f_t‖² of the untruncated fractional kernel:
// t^{2d+1} / (Gamma(2d+2) sin(pi (d + 1/2))).
double fractional_l2norm_sq_exact(double d, double t);

}  // namespace clevy
