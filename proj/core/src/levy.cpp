#include "clevy/levy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

#include <boost/math/special_functions/gamma.hpp>

#include "clevy/errors.hpp"
#include "clevy/quadrature.hpp"

namespace clevy {
namespace {

void validate_density(const TemperedStableDensity& d) {
  if (!(d.c > 0.0) || !(d.g > 0.0) || !(d.m > 0.0)) {
    throw ConfigError("tempered-stable density needs c, g, m > 0");
  }
  if (!(d.y >= 0.0 && d.y < 2.0)) {
    throw ConfigError("tempered-stable density needs 0 <= y < 2");
  }
}

// ∫_{lo}^{inf} h(x) dx for a density-weighted integrand on one half-line.
template <class H>
auto half_line(const H& h, double lo) {
  const double split = std::max(1.0, 2.0 * lo);
  using R = decltype(h(1.0));
  // Untruncated density: start at 1e-100, omitting O(1e-100^{2-y}).
  if (lo == 0.0) lo = 1e-100;
  std::function<R(double)> fn = h;
  if constexpr (std::is_same_v<R, double>) {
    return quad::integrate(fn, lo, split) + quad::integrate(fn, split, kInf);
  } else {
    return quad::integrate_complex(fn, lo, split) + quad::integrate_complex(fn, split, kInf);
  }
}

}  // namespace

std::complex<double> compensated_cis(double z) {
  const double h = std::sin(0.5 * z);
  const double re = -2.0 * h * h;
  double im;
  if (std::abs(z) < 1e-2) {
    const double z2 = z * z;
    im = -z * z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
  } else {
    im = std::sin(z) - z;
  }
  return {re, im};
}

Interval Interval::hull(const Interval& other) const {
  return {std::min(lo, other.lo), std::max(hi, other.hi)};
}

double TemperedStableDensity::operator()(double x) const {
  if (x > 0.0) return c * std::exp(-m * x) * std::pow(x, -1.0 - y);
  if (x < 0.0) return c * std::exp(g * x) * std::pow(-x, -1.0 - y);
  return 0.0;
}

JumpMeasure JumpMeasure::from_atoms(std::vector<Atom> atoms) {
  JumpMeasure out;
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.size) || !std::isfinite(a.rate)) throw ConfigError("atom must be finite");
    if (a.size == 0.0) throw ConfigError("Lévy measure cannot charge 0");
    if (a.rate < 0.0) throw ConfigError("atom rate must be non-negative");
    if (a.rate == 0.0) continue;
    out.atoms_.push_back(a);
    out.atom_rate_ += a.rate;
  }
  return out;
}

JumpMeasure JumpMeasure::with_density(TemperedStableDensity density, double epsilon,
                                      std::vector<Atom> atoms) {
  validate_density(density);
  if (!(epsilon >= 0.0)) throw ConfigError("truncation threshold must be >= 0");
  JumpMeasure out = from_atoms(std::move(atoms));
  out.density_ = density;
  out.epsilon_ = epsilon;
  if (epsilon == 0.0) {
    out.density_rate_ = kInf;
    out.density_neg_rate_ = kInf;
  } else {
    const auto d = density;
    out.density_neg_rate_ = half_line([d](double x) { return d(-x); }, epsilon);
    out.density_rate_ = out.density_neg_rate_ + half_line([d](double x) { return d(x); }, epsilon);
  }
  return out;
}

double JumpMeasure::total_rate() const { return atom_rate_ + (density_ ? density_rate_ : 0.0); }

double JumpMeasure::integrate(const std::function<double(double)>& g) const {
  double acc = 0.0;
  for (const Atom& a : atoms_) acc += a.rate * g(a.size);
  if (density_) {
    const auto d = *density_;
    acc += half_line([&](double x) { return g(x) * d(x); }, epsilon_);
    acc += half_line([&](double x) { return g(-x) * d(-x); }, epsilon_);
  }
  return acc;
}

std::complex<double> JumpMeasure::integrate_complex(
    const std::function<std::complex<double>(double)>& g) const {
  std::complex<double> acc{};
  for (const Atom& a : atoms_) acc += a.rate * g(a.size);
  if (density_) {
    const auto d = *density_;
    acc += half_line([&](double x) { return g(x) * d(x); }, epsilon_);
    acc += half_line([&](double x) { return g(-x) * d(-x); }, epsilon_);
  }
  return acc;
}

double JumpMeasure::first_moment() const {
  if (density_ && epsilon_ == 0.0 && density_->y >= 1.0) {
    // Both half-line integrals diverge; the symmetric difference is not
    // a Lebesgue integral.
    throw PreconditionError("∫|x| nu(dx) is infinite: first moment undefined");
  }
  return integrate([](double x) { return x; });
}

double JumpMeasure::second_moment() const { return abs_moment(2); }

double JumpMeasure::abs_moment(int order) const {
  const auto weight = [order](double x) { return std::pow(std::abs(x), order); };
  if (!density_ || epsilon_ > 0.0) return integrate(weight);
  const double a = static_cast<double>(order) - density_->y;
  if (a <= 0.0) return kInf;
  // ∫_0^∞ x^{a-1} e^{-rx} dx = Gamma(a) r^{-a}, one term per half line.
  double acc = 0.0;
  for (const Atom& at : atoms_) acc += at.rate * weight(at.size);
  const double ga = std::tgamma(a);
  return acc + density_->c * ga * (std::pow(density_->m, -a) + std::pow(density_->g, -a));
}

void JumpMeasure::check_moments(int order) const {
  for (int m = 2; m <= order; ++m) {
    const double v = abs_moment(m);
    if (!std::isfinite(v)) {
      throw ConfigError("Lévy measure has infinite absolute moment of order " + std::to_string(m));
    }
  }
}

double JumpMeasure::max_abs_size() const {
  if (density_) return kInf;
  double out = 0.0;
  for (const Atom& a : atoms_) out = std::max(out, std::abs(a.size));
  return out;
}

double JumpMeasure::sample_size(Stream& rng) const {
  const double total = total_rate();
  if (!(total < kInf)) throw ConfigError("cannot sample jumps of an infinite-activity measure");
  double u = rng.uniform() * total;
  for (const Atom& a : atoms_) {
    if (u < a.rate) return a.size;
    u -= a.rate;
  }
  if (!density_) return atoms_.empty() ? 0.0 : atoms_.back().size;
  const auto& d = *density_;
  const bool negative = u < density_neg_rate_;
  const double decay = negative ? d.g : d.m;
  const double eps = epsilon_;
  for (;;) {
    double x;
    if (d.y > 0.0) {
      // Pareto(eps, y) proposal, accept with the exponential tempering.
      x = eps * std::pow(rng.uniform(), -1.0 / d.y);
      if (rng.uniform() >= std::exp(-decay * (x - eps))) continue;
    } else {
      // Shifted exponential proposal, accept with (eps/x)^{1+y}.
      x = eps + rng.exponential(decay);
      if (rng.uniform() >= std::pow(eps / x, 1.0 + d.y)) continue;
    }
    return negative ? -x : x;
  }
}

std::vector<Atom> JumpMeasure::discretize() const {
  std::vector<Atom> out(atoms_.begin(), atoms_.end());
  if (!density_) return out;
  if (epsilon_ == 0.0) throw UnsupportedError("cannot discretise an untruncated density");
  const auto& d = *density_;
  for (int side : {-1, 1}) {
    const double decay = side < 0 ? d.g : d.m;
    const double upper = std::max(2.0 * epsilon_, 40.0 / decay);
    double lo = epsilon_;
    while (lo < upper) {
      const double hi = std::min(upper, 2.0 * lo);
      const quad::Rule rule = quad::gauss_legendre(lo, hi, 1);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const double x = side * rule.nodes[i];
        out.push_back({x, rule.weights[i] * d(x)});
      }
      lo = hi;
    }
  }
  return out;
}

std::string JumpMeasure::describe() const {
  std::ostringstream os;
  os << "nu(";
  bool first = true;
  for (const Atom& a : atoms_) {
    os << (first ? "" : ";") << a.rate << "@" << a.size;
    first = false;
  }
  if (density_) {
    os << (first ? "" : ";") << "ts[c=" << density_->c << " g=" << density_->g
       << " m=" << density_->m << " y=" << density_->y << " eps=" << epsilon_ << "]";
  }
  os << ")";
  return os.str();
}

std::complex<double> char_exponent(const JumpMeasure& measure, double u) {
  if (u == 0.0) return {0.0, 0.0};
  return measure.integrate_complex(
      std::function<std::complex<double>(double)>([u](double x) { return compensated_cis(u * x); }));
}

double levy_variance(const JumpMeasure& measure) { return measure.second_moment(); }

TruncationResult truncate_small_jumps(const JumpMeasure& measure, double eps) {
  if (!(eps > 0.0)) throw ContractError("truncation threshold must be > 0");
  TruncationResult out;
  std::vector<Atom> kept;
  for (const Atom& a : measure.atoms()) {
    if (std::abs(a.size) > eps) {
      kept.push_back(a);
    } else {
      out.discarded_variance += a.rate * a.size * a.size;
    }
  }
  if (const auto& d = measure.density()) {
    const double new_eps = std::max(eps, measure.epsilon());
    const double a = 2.0 - d->y;
    auto lower = [&](double decay, double e) {
      return e > 0.0 ? boost::math::tgamma_lower(a, decay * e) : 0.0;
    };
    for (double decay : {d->g, d->m}) {
      out.discarded_variance += d->c * std::pow(decay, -a) *
                                (lower(decay, new_eps) - lower(decay, measure.epsilon()));
    }
    out.measure = JumpMeasure::with_density(*d, new_eps, std::move(kept));
  } else {
    out.measure = JumpMeasure::from_atoms(std::move(kept));
  }
  if (out.measure.empty()) {
    out.support_empty = true;
    out.warning = "truncation at eps=" + std::to_string(eps) + " removed every jump";
  }
  return out;
}

JumpPath::JumpPath(Interval window, std::vector<Jump> jumps, double drift_rate, StreamKey key)
    : window_(window), jumps_(std::move(jumps)), drift_(drift_rate), key_(key) {
  if (!(window_.hi >= window_.lo)) throw ContractError("path window is empty");
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    if (!window_.contains(jumps_[i].time)) throw ContractError("jump time outside path window");
    if (i > 0 && !(jumps_[i].time > jumps_[i - 1].time)) {
      throw ContractError("jump times must be strictly increasing");
    }
  }
  prefix_.resize(jumps_.size() + 1, 0.0);
  for (std::size_t i = 0; i < jumps_.size(); ++i) prefix_[i + 1] = prefix_[i] + jumps_[i].size;
}

double JumpPath::prefix_upto(double t, bool inclusive) const {
  auto cmp_time = [](const Jump& j, double v) { return j.time < v; };
  auto it = inclusive ? std::upper_bound(jumps_.begin(), jumps_.end(), t,
                                         [](double v, const Jump& j) { return v < j.time; })
                      : std::lower_bound(jumps_.begin(), jumps_.end(), t, cmp_time);
  return prefix_[static_cast<std::size_t>(it - jumps_.begin())];
}

double JumpPath::levy(double t) const {
  return prefix_upto(t, true) - prefix_upto(0.0, true) + drift_ * t;
}

double JumpPath::levy_left(double t) const {
  return prefix_upto(t, false) - prefix_upto(0.0, true) + drift_ * t;
}

double JumpPath::jump_sum(double a, double b) const {
  return b > a ? prefix_upto(b, true) - prefix_upto(a, true) : 0.0;
}

std::size_t JumpPath::jump_count(double a, double b) const {
  if (!(b > a)) return 0;
  auto after = [](double v, const Jump& j) { return v < j.time; };
  auto lo = std::upper_bound(jumps_.begin(), jumps_.end(), a, after);
  auto hi = std::upper_bound(jumps_.begin(), jumps_.end(), b, after);
  return static_cast<std::size_t>(hi - lo);
}

JumpPath simulate_path(const JumpMeasure& measure, const Interval& window, const StreamKey& key) {
  const double rate = measure.total_rate();
  if (!(rate < kInf)) {
    throw ConfigError("infinite jump activity: truncate small jumps before simulating");
  }
  std::vector<Jump> jumps;
  if (rate > 0.0) {
    // Negative half first so the merged list is already sorted.
    if (window.lo < 0.0) {
      StreamKey k = key;
      k.branch = 1;
      Stream rng(k);
      std::vector<Jump> neg;
      for (double r = rng.exponential(rate); r <= -window.lo; r += rng.exponential(rate)) {
        const double x = measure.sample_size(rng);
        if (-r <= window.hi) neg.push_back({-r, x});
      }
      jumps.insert(jumps.end(), neg.rbegin(), neg.rend());
    }
    if (window.hi >= 0.0) {
      StreamKey k = key;
      k.branch = 0;
      Stream rng(k);
      for (double s = rng.exponential(rate); s <= window.hi; s += rng.exponential(rate)) {
        const double x = measure.sample_size(rng);
        if (s >= window.lo) jumps.push_back({s, x});
      }
    }
  }
  return JumpPath(window, std::move(jumps), measure.empty() ? 0.0 : measure.drift_rate(), key);
}

}  // namespace clevy
