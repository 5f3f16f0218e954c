#include "clevy/eta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clevy/errors.hpp"
#include "clevy/quadrature.hpp"

namespace clevy {

namespace {
constexpr double kNegligible = 1e-13;
}

double profile_max(EtaFlavor flavor) {
  return flavor == EtaFlavor::Even ? std::exp(-1.0) : std::pow(1.5, 1.5) * std::exp(-1.5);
}

EtaTest::EtaTest(double c, double w, EtaFlavor flavor) : c_(c), w_(w), flavor_(flavor) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("eta width must be positive");
  if (!std::isfinite(c)) throw ConfigError("eta amplitude must be finite");
  const double peak = std::abs(c) * profile_max(flavor);
  radius_ = peak > kNegligible ? std::sqrt(w * std::log(peak / kNegligible)) : 0.0;
}

EtaTest EtaTest::field(double c, double w, EtaFlavor flavor) { return EtaTest(c, w, flavor); }

EtaTest EtaTest::builtin(double c, double w, EtaFlavor flavor) {
  if (flavor == EtaFlavor::Even && !(c > -1.0)) {
    throw ConfigError("even eta needs c > -1");
  }
  if (flavor == EtaFlavor::Odd && !(std::abs(c) * profile_max(flavor) < 1.0)) {
    throw ConfigError("odd eta needs |c| max|x^3 e^{-x^2}| < 1");
  }
  return EtaTest(c, w, flavor);
}

double EtaTest::x_profile(double x) const {
  const double x2 = x * x;
  const double e = std::exp(-x2);
  return flavor_ == EtaFlavor::Even ? x2 * e : x2 * x * e;
}

double EtaTest::time_profile(double t) const { return std::exp(-t * t / w_); }

double EtaTest::sup() const {
  const double m = profile_max(flavor_) * std::abs(c_);
  if (flavor_ == EtaFlavor::Odd) return m;
  return c_ > 0.0 ? m : 0.0;
}

double EtaTest::inf() const {
  const double m = profile_max(flavor_) * std::abs(c_);
  if (flavor_ == EtaFlavor::Odd) return -m;
  return c_ < 0.0 ? -m : 0.0;
}

double EtaTest::x_integral(const JumpMeasure& measure, double (*weight)(double)) const {
  if (is_zero()) return 0.0;
  return c_ * measure.integrate([&](double x) { return weight(x) * x_profile(x); });
}

double EtaTest::time_integral(double a, double b) const {
  if (is_zero()) return 0.0;
  const double lo = std::max(a, -radius_), hi = std::min(b, radius_);
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts{lo, hi};
  if (lo < 0.0 && hi > 0.0) pts.insert(pts.begin() + 1, 0.0);
  return quad::integrate_pieces([&](double t) { return time_profile(t); }, pts);
}

std::string EtaTest::id() const {
  if (is_zero()) return "zero";
  std::ostringstream os;
  os << (flavor_ == EtaFlavor::Even ? "even" : "odd") << "(c=" << c_ << " w=" << w_ << ")";
  return os.str();
}

double eta_compensator(const EtaTest& eta, const JumpMeasure& measure) {
  if (eta.is_zero()) return 0.0;
  const double r = eta.time_support().hi;
  return eta.x_integral(measure, [](double) { return 1.0; }) * eta.time_integral(-r, r);
}

double eta_pairing(const EtaTest& a, const EtaTest& b, const JumpMeasure& measure) {
  if (a.is_zero() || b.is_zero()) return 0.0;
  const double x_part = a.amplitude() * b.amplitude() *
                        measure.integrate([&](double x) { return a.x_profile(x) * b.x_profile(x); });
  const double lo = std::max(a.time_support().lo, b.time_support().lo);
  const double hi = std::min(a.time_support().hi, b.time_support().hi);
  if (!(hi > lo)) return 0.0;
  const std::vector<double> pts{lo, 0.0, hi};
  const double t_part = quad::integrate_pieces(
      [&](double t) { return a.time_profile(t) * b.time_profile(t); }, pts);
  return x_part * t_part;
}

WickWeight::WickWeight(EtaTest eta, const JumpMeasure& measure)
    : eta_(std::move(eta)), comp_(eta_compensator(eta_, measure)) {}

void WickWeight::require_cover(const JumpPath& path) const {
  if (!path.window().covers(eta_.time_support())) {
    throw ContractError("path window does not cover the time support of " + eta_.id());
  }
}

double WickWeight::operator()(const JumpPath& path) const {
  if (eta_.is_zero()) return 1.0;
  require_cover(path);
  const Interval sup = eta_.time_support();
  double log_sum = 0.0;
  for (const Jump& j : path.jumps()) {
    if (j.time < sup.lo) continue;
    if (j.time > sup.hi) break;
    log_sum += std::log1p(eta_(j.size, j.time));
  }
  return std::exp(log_sum - comp_);
}

double WickWeight::product(const JumpPath& path) const {
  if (eta_.is_zero()) return 1.0;
  require_cover(path);
  const Interval sup = eta_.time_support();
  double prod = 1.0;
  for (const Jump& j : path.jumps()) {
    if (j.time < sup.lo) continue;
    if (j.time > sup.hi) break;
    prod *= 1.0 + eta_(j.size, j.time);
  }
  return prod * std::exp(-comp_);
}

JumpPath simulate_path_shifted(const JumpMeasure& measure, const EtaTest& eta,
                               const Interval& window, const StreamKey& key) {
  const double rate = measure.total_rate();
  if (!(rate < kInf)) {
    throw ConfigError("infinite jump activity: truncate small jumps before simulating");
  }
  const double top = std::max(0.0, eta.sup());
  if (!std::isfinite(top)) throw ConfigError("eta is unbounded; thinning needs sup eta < inf");
  if (!(eta.inf() > -1.0)) throw ConfigError("eta must stay above -1 to define Q_eta");
  const double bound = rate * (1.0 + top);
  std::vector<Jump> jumps;
  auto accept = [&](Stream& rng, double s, double& x) {
    x = measure.sample_size(rng);
    const double keep = (1.0 + eta(x, s)) / (1.0 + top);
    return rng.uniform() < keep;
  };
  if (bound > 0.0) {
    if (window.lo < 0.0) {
      StreamKey k = key;
      k.branch = 1;
      Stream rng(k);
      std::vector<Jump> neg;
      for (double r = rng.exponential(bound); r <= -window.lo; r += rng.exponential(bound)) {
        double x = 0.0;
        if (accept(rng, -r, x) && -r <= window.hi) neg.push_back({-r, x});
      }
      jumps.insert(jumps.end(), neg.rbegin(), neg.rend());
    }
    if (window.hi >= 0.0) {
      StreamKey k = key;
      k.branch = 0;
      Stream rng(k);
      for (double s = rng.exponential(bound); s <= window.hi; s += rng.exponential(bound)) {
        double x = 0.0;
        if (accept(rng, s, x) && s >= window.lo) jumps.push_back({s, x});
      }
    }
  }
  return JumpPath(window, std::move(jumps), measure.empty() ? 0.0 : measure.drift_rate(), key);
}

}  // namespace clevy
