#include "clevy/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "clevy/errors.hpp"
#include "clevy/quadrature.hpp"

namespace clevy {

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::ShotNoise: return "shot-noise";
    case KernelKind::OrnsteinUhlenbeck: return "ou";
    case KernelKind::Fractional: return "fractional";
    case KernelKind::Indicator: return "indicator";
    case KernelKind::Custom: return "custom";
  }
  return "unknown";
}

std::vector<double> KernelImpl::breakpoints(double t) const { return {s_lower(), 0.0, t}; }

double KernelImpl::integral(double t) const {
  std::vector<double> pts = breakpoints(t);
  return quad::integrate_pieces([&](double s) { return eval_lag(t, t - s); }, pts);
}

double KernelImpl::integral_dt(double t) const {
  std::vector<double> pts = breakpoints(t);
  return diag(t) + quad::integrate_pieces([&](double s) { return ddt_lag(t, t - s); }, pts);
}

namespace {

std::string fmt(const char* head, std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  os << head << "(";
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  os << ")";
  return os.str();
}

void require_t_star(double t_star) {
  if (!(t_star > 0.0) || !std::isfinite(t_star)) throw ConfigError("t_star must be positive");
}

class OrnsteinUhlenbeck final : public KernelImpl {
 public:
  OrnsteinUhlenbeck(double kappa, double t_star) : kappa_(kappa), t_star_(t_star) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ConfigError("kappa must be >= 0");
    require_t_star(t_star);
  }
  KernelKind kind() const override { return KernelKind::OrnsteinUhlenbeck; }
  std::string name() const override { return fmt("ou", {{"kappa", kappa_}, {"T", t_star_}}); }
  double eval_lag(double t, double r) const override {
    return r > t ? 0.0 : std::exp(-kappa_ * r);
  }
  double ddt_lag(double t, double r) const override {
    return r > t ? 0.0 : -kappa_ * std::exp(-kappa_ * r);
  }
  double dds(double t, double s) const override {
    return (s < 0.0 || s > t) ? 0.0 : kappa_ * std::exp(-kappa_ * (t - s));
  }
  double diag(double) const override { return 1.0; }
  double s_lower() const override { return 0.0; }
  double t_upper() const override { return t_star_; }
  std::vector<double> breakpoints(double t) const override { return {0.0, t}; }
  double integral(double t) const override {
    return kappa_ == 0.0 ? t : -std::expm1(-kappa_ * t) / kappa_;
  }
  double integral_dt(double t) const override { return std::exp(-kappa_ * t); }
  Hypotheses declared() const override { return {true, true, true, true}; }

 private:
  double kappa_;
  double t_star_;
};

class ShotNoise final : public KernelImpl {
 public:
  ShotNoise(std::vector<double> coeffs, double t_star) : c_(std::move(coeffs)), t_star_(t_star) {
    if (c_.empty()) throw ConfigError("shot-noise kernel needs at least one coefficient");
    require_t_star(t_star);
  }
  KernelKind kind() const override { return KernelKind::ShotNoise; }
  std::string name() const override {
    std::ostringstream os;
    os << "shot(k=";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "+" : "") << c_[i] << "u^" << i;
    os << " T=" << t_star_ << ")";
    return os.str();
  }
  double k(double u) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * u + c_[i];
    return acc;
  }
  double dk(double u) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 1;) acc = acc * u + static_cast<double>(i) * c_[i];
    return acc;
  }
  double eval_lag(double t, double r) const override { return r > t ? 0.0 : k(r); }
  double ddt_lag(double t, double r) const override { return r > t ? 0.0 : dk(r); }
  double dds(double t, double s) const override {
    return (s < 0.0 || s > t) ? 0.0 : -dk(t - s);
  }
  double diag(double) const override { return c_[0]; }
  double s_lower() const override { return 0.0; }
  double t_upper() const override { return t_star_; }
  std::vector<double> breakpoints(double t) const override { return {0.0, t}; }
  double integral(double t) const override {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i] / static_cast<double>(i + 1);
    return acc * t;
  }
  double integral_dt(double t) const override { return k(t); }
  Hypotheses declared() const override { return {true, true, true, true}; }

 private:
  std::vector<double> c_;
  double t_star_;
};

class Indicator final : public KernelImpl {
 public:
  explicit Indicator(double t_star) : t_star_(t_star) { require_t_star(t_star); }
  KernelKind kind() const override { return KernelKind::Indicator; }
  std::string name() const override { return fmt("indicator", {{"T", t_star_}}); }
  double eval_lag(double t, double r) const override { return r < t ? 1.0 : 0.0; }
  double ddt_lag(double, double) const override { return 0.0; }
  double dds(double, double) const override { return 0.0; }
  double diag(double) const override { return 1.0; }
  double s_lower() const override { return 0.0; }
  double t_upper() const override { return t_star_; }
  std::vector<double> breakpoints(double t) const override { return {0.0, t}; }
  double integral(double t) const override { return t; }
  double integral_dt(double) const override { return 1.0; }
  Hypotheses declared() const override { return {true, true, true, true}; }

 private:
  double t_star_;
};

class Fractional final : public KernelImpl {
 public:
  Fractional(double d, double cutoff)
      : d_(d), cutoff_(cutoff), g1_(std::tgamma(1.0 + d)), gd_(std::tgamma(d)) {
    if (!(d > 0.0 && d < 0.5)) throw ConfigError("fractional order d must lie in (0, 1/2)");
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
      throw ConfigError("fractional past cutoff must be positive and finite");
    }
  }
  KernelKind kind() const override { return KernelKind::Fractional; }
  std::string name() const override { return fmt("frac", {{"d", d_}, {"cutoff", cutoff_}}); }
  double eval_lag(double t, double r) const override {
    const double a = r - t;  // = -s
    if (a > cutoff_) return 0.0;
    if (a <= 0.0) return std::pow(r, d_) / g1_;
    // (a + t)^d - a^d without cancellation for a >> t.
    return std::pow(a, d_) * std::expm1(d_ * std::log1p(t / a)) / g1_;
  }
  double ddt_lag(double t, double r) const override {
    if (r <= 0.0) throw SingularPointError("d/dt of the fractional kernel is singular on s = t");
    if (r - t > cutoff_) return 0.0;
    return std::pow(r, d_ - 1.0) / gd_;
  }
  double dds(double t, double s) const override {
    if (s >= t || s < -cutoff_) return 0.0;
    double v = -d_ * std::pow(t - s, d_ - 1.0);
    if (s < 0.0) v += d_ * std::pow(-s, d_ - 1.0);
    return v / g1_;
  }
  double diag(double) const override { return 0.0; }
  double s_lower() const override { return -cutoff_; }
  double t_upper() const override { return kInf; }
  double integral(double t) const override {
    return (std::pow(t + cutoff_, d_ + 1.0) - std::pow(cutoff_, d_ + 1.0)) / ((d_ + 1.0) * g1_);
  }
  double integral_dt(double t) const override { return std::pow(t + cutoff_, d_) / g1_; }
  Hypotheses declared() const override { return {false, true, true, false}; }
  double diagonal_order() const override { return d_; }

 private:
  double d_;
  double cutoff_;
  double g1_;
  double gd_;
};

class Tabulated final : public KernelImpl {
 public:
  Tabulated(std::vector<double> v, double h, double t_star, std::string name)
      : v_(std::move(v)), h_(h), t_star_(t_star), name_(std::move(name)) {
    require_t_star(t_star);
    if (!(h > 0.0)) throw ConfigError("table spacing must be positive");
    if (v_.size() < 2) throw ConfigError("kernel table needs at least two values");
    if (static_cast<double>(v_.size() - 1) * h < t_star) {
      throw ConfigError("kernel table must cover lags up to t_star");
    }
  }
  KernelKind kind() const override { return KernelKind::Custom; }
  std::string name() const override { return name_; }

  double slope(std::size_t i) const {
    const std::size_t n = v_.size() - 1;
    if (i == 0) return (v_[1] - v_[0]) / h_;
    if (i == n) return (v_[n] - v_[n - 1]) / h_;
    return (v_[i + 1] - v_[i - 1]) / (2.0 * h_);
  }
  // Cubic Hermite value (deriv = false) or derivative at lag u.
  double hermite(double u, bool deriv) const {
    const std::size_t n = v_.size() - 1;
    const std::size_t i = std::min(n - 1, static_cast<std::size_t>(u / h_));
    const double x = u / h_ - static_cast<double>(i);
    const double p0 = v_[i], p1 = v_[i + 1];
    const double m0 = slope(i) * h_, m1 = slope(i + 1) * h_;
    const double x2 = x * x, x3 = x2 * x;
    if (!deriv) {
      return (2 * x3 - 3 * x2 + 1) * p0 + (x3 - 2 * x2 + x) * m0 + (-2 * x3 + 3 * x2) * p1 +
             (x3 - x2) * m1;
    }
    return ((6 * x2 - 6 * x) * p0 + (3 * x2 - 4 * x + 1) * m0 + (-6 * x2 + 6 * x) * p1 +
            (3 * x2 - 2 * x) * m1) / h_;
  }
  double eval_lag(double t, double r) const override { return r > t ? 0.0 : hermite(r, false); }
  double ddt_lag(double t, double r) const override { return r > t ? 0.0 : hermite(r, true); }
  double dds(double t, double s) const override {
    return (s < 0.0 || s > t) ? 0.0 : -hermite(t - s, true);
  }
  double diag(double) const override { return v_[0]; }
  double s_lower() const override { return 0.0; }
  double t_upper() const override { return t_star_; }
  std::vector<double> breakpoints(double t) const override {
    std::vector<double> out{0.0};
    for (std::size_t i = 1; static_cast<double>(i) * h_ < t; ++i) {
      out.push_back(t - static_cast<double>(i) * h_);
    }
    out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
  }
  double integral_dt(double t) const override { return hermite(t, false); }
  Hypotheses declared() const override { return {true, true, true, true}; }

 private:
  std::vector<double> v_;
  double h_;
  double t_star_;
  std::string name_;
};

class Custom final : public KernelImpl {
 public:
  Custom(std::function<double(double, double)> f, std::function<double(double, double)> ddt,
         double t_star, std::string name)
      : f_(std::move(f)), ddt_(std::move(ddt)), t_star_(t_star), name_(std::move(name)) {
    require_t_star(t_star);
    if (!f_) throw ConfigError("custom kernel needs an evaluation function");
  }
  KernelKind kind() const override { return KernelKind::Custom; }
  std::string name() const override { return name_; }
  double eval_lag(double t, double r) const override { return r > t ? 0.0 : f_(t, t - r); }
  double ddt_lag(double t, double r) const override {
    if (!ddt_) throw UnsupportedError("custom kernel " + name_ + " has no t-derivative");
    return r > t ? 0.0 : ddt_(t, t - r);
  }
  double dds(double t, double s) const override {
    if (s < 0.0 || s >= t) return 0.0;
    const double h = 1e-6 * std::max(1.0, std::abs(s));
    const double lo = std::max(0.0, s - h), hi = std::min(t, s + h);
    return (f_(t, hi) - f_(t, lo)) / (hi - lo);
  }
  double diag(double t) const override { return f_(t, t); }
  double s_lower() const override { return 0.0; }
  double t_upper() const override { return t_star_; }
  std::vector<double> breakpoints(double t) const override { return {0.0, t}; }
  Hypotheses declared() const override { return flags_; }

  Hypotheses flags_{};

 private:
  std::function<double(double, double)> f_;
  std::function<double(double, double)> ddt_;
  double t_star_;
  std::string name_;
};

}  // namespace

VolterraKernel VolterraKernel::ornstein_uhlenbeck(double kappa, double t_star) {
  return VolterraKernel(std::make_shared<OrnsteinUhlenbeck>(kappa, t_star));
}

VolterraKernel VolterraKernel::shot_noise(std::vector<double> coeffs, double t_star) {
  return VolterraKernel(std::make_shared<ShotNoise>(std::move(coeffs), t_star));
}

VolterraKernel VolterraKernel::indicator(double t_star) {
  return VolterraKernel(std::make_shared<Indicator>(t_star));
}

VolterraKernel VolterraKernel::fractional(double d, double past_cutoff) {
  return VolterraKernel(std::make_shared<Fractional>(d, past_cutoff));
}

VolterraKernel VolterraKernel::tabulated(std::vector<double> values, double h, double t_star,
                                         std::string name) {
  return VolterraKernel(std::make_shared<Tabulated>(std::move(values), h, t_star, std::move(name)));
}

VolterraKernel VolterraKernel::custom(std::function<double(double, double)> f,
                                      std::function<double(double, double)> ddt, double t_star,
                                      std::string name) {
  auto impl = std::make_shared<Custom>(std::move(f), std::move(ddt), t_star, std::move(name));
  impl->flags_ = check_hypotheses(VolterraKernel(impl)).result;
  return VolterraKernel(impl);
}

double VolterraKernel::eval(double t, double s) const {
  if (t <= 0.0 || t > impl_->t_upper() || s > t || s < impl_->s_lower()) return 0.0;
  return impl_->eval_lag(t, t - s);
}

double VolterraKernel::eval_lag(double t, double r) const {
  if (t <= 0.0 || t > impl_->t_upper() || r < 0.0) return 0.0;
  return impl_->eval_lag(t, r);
}

double VolterraKernel::ddt(double t, double s) const {
  if (t <= 0.0 || t > impl_->t_upper() || s > t || s < impl_->s_lower()) return 0.0;
  return impl_->ddt_lag(t, t - s);
}

double VolterraKernel::ddt_lag(double t, double r) const {
  if (t <= 0.0 || t > impl_->t_upper() || r < 0.0) return 0.0;
  return impl_->ddt_lag(t, r);
}

double VolterraKernel::dds(double t, double s) const {
  if (t <= 0.0 || t > impl_->t_upper()) return 0.0;
  return impl_->dds(t, s);
}

double VolterraKernel::diag(double t) const {
  if (t < 0.0 || t > impl_->t_upper()) return 0.0;
  return impl_->diag(t);
}

std::vector<double> VolterraKernel::breakpoints(double t) const {
  std::vector<double> pts = impl_->breakpoints(t);
  const double lo = impl_->s_lower();
  std::erase_if(pts, [&](double p) { return p < lo || p > t; });
  pts.push_back(lo);
  pts.push_back(t);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double VolterraKernel::integral(double t) const {
  if (t <= 0.0) return 0.0;
  return impl_->integral(t);
}

double VolterraKernel::integral_dt(double t) const {
  if (t < 0.0) return 0.0;
  return impl_->integral_dt(t);
}

double VolterraKernel::l2norm_sq(double t, double rel_tol) const {
  if (t <= 0.0) return 0.0;
  const std::vector<double> pts = breakpoints(t);
  quad::Options opts;
  opts.rel_tol = rel_tol;
  return quad::integrate_pieces(
      [&](double s) {
        const double v = impl_->eval_lag(t, t - s);
        return v * v;
      },
      pts, opts);
}

HypothesisReport check_hypotheses(const VolterraKernel& k) {
  HypothesisReport rep;
  auto fail = [&](std::string msg) { rep.witnesses.push_back(std::move(msg)); };
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  };

  const double lo = k.s_lower();
  const double hi = k.t_upper();
  rep.result.h1 = std::isfinite(lo) && std::isfinite(hi) && lo <= 0.0 && hi > 0.0;
  if (!rep.result.h1) {
    fail("H1: support not contained in a bounded square (s_lower=" + num(lo) +
         ", t_upper=" + num(hi) + ")");
  }

  const double horizon = std::isfinite(hi) ? hi : 2.0;
  const double s_from = std::max(lo, -5.0);
  constexpr int kT = 12;
  constexpr int kS = 24;

  // Volterra property and f(0, ·) = 0.
  for (int i = 1; i <= kT; ++i) {
    const double t = horizon * i / kT;
    for (double s : {t + 1e-9, t + 0.5, t + 3.0}) {
      if (k.eval(t, s) != 0.0) {
        rep.result.h1 = false;
        fail("H1: f(" + num(t) + ", " + num(s) + ") != 0 above the diagonal");
      }
    }
  }
  for (int j = 0; j <= kS; ++j) {
    const double s = s_from + (horizon - s_from) * j / kS;
    if (k.eval(0.0, s) != 0.0) fail("f(0, " + num(s) + ") != 0");
  }

  // H2: finite and bounded off the diagonal.
  rep.result.h2 = true;
  for (int i = 1; i <= kT && rep.result.h2; ++i) {
    const double t = horizon * i / kT;
    for (int j = 0; j < kS; ++j) {
      const double s = s_from + (t - s_from) * (j + 0.5) / kS;
      const double v = k.eval(t, s);
      if (!std::isfinite(v) || std::abs(v) > 1e8) {
        rep.result.h2 = false;
        fail("H2: f(" + num(t) + ", " + num(s) + ") = " + num(v));
        break;
      }
    }
  }

  // H3: lim_{s↑t} f(t, s) = diag(t).
  rep.result.h3 = true;
  for (int i = 1; i <= kT; ++i) {
    const double t = horizon * i / kT;
    const double near = k.eval_lag(t, 1e-200);
    const double dg = k.diag(t);
    if (!std::isfinite(near) || std::abs(near - dg) > 1e-6 * (1.0 + std::abs(dg))) {
      rep.result.h3 = false;
      fail("H3: f(" + num(t) + ", t-) = " + num(near) + " but diag = " + num(dg));
      break;
    }
  }

  // H4: derivative available, consistent with finite differences, bounded near s = t.
  rep.result.h4 = true;
  try {
    for (int i = 1; i <= kT && rep.result.h4; ++i) {
      const double t = horizon * (i - 0.5) / kT;
      const double far = std::abs(k.ddt_lag(t, 1e-4));
      const double close = std::abs(k.ddt_lag(t, 1e-12));
      if (!std::isfinite(close) || close > 100.0 * (1.0 + far)) {
        rep.result.h4 = false;
        fail("H4: |d/dt f(" + num(t) + ", t - 1e-12)| = " + num(close) + " is unbounded");
        break;
      }
      for (int j = 0; j < kS; ++j) {
        const double s = s_from + (t - s_from) * (j + 0.37) / kS;
        const double h = 1e-5 * std::max(1.0, t);
        if (t - h <= s || t + h > hi) continue;
        const double fd = (k.eval(t + h, s) - k.eval(t - h, s)) / (2.0 * h);
        const double dv = k.ddt(t, s);
        if (!(std::abs(fd - dv) <= 1e-6 * (1.0 + std::abs(dv)))) {
          rep.result.h4 = false;
          fail("H4: d/dt f(" + num(t) + ", " + num(s) + ") = " + num(dv) +
               " but finite difference gives " + num(fd));
          break;
        }
      }
    }
  } catch (const UnsupportedError& e) {
    rep.result.h4 = false;
    fail(std::string("H4: ") + e.what());
  }
  return rep;
}

double fractional_l2norm_sq_exact(double d, double t) {
  return std::pow(t, 2.0 * d + 1.0) /
         (std::tgamma(2.0 * d + 2.0) * std::sin(std::numbers::pi * (d + 0.5)));
}

}  // namespace clevy
