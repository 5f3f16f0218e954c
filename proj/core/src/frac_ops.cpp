#include "clevy/frac_ops.hpp"

#include <algorithm>
#include <cmath>

#include "clevy/errors.hpp"

namespace clevy {

SampledFunction::SampledFunction() : g_([](double) { return 0.0; }), zero_(true) {}

SampledFunction SampledFunction::closed_form(std::function<double(double)> g, Interval support,
                                             std::vector<double> breakpoints) {
  if (!g) throw ContractError("closed-form function handle is empty");
  if (!(support.hi >= support.lo)) throw ContractError("support interval is empty");
  SampledFunction out;
  out.g_ = std::move(g);
  out.support_ = support;
  std::erase_if(breakpoints, [&](double p) { return !(p > support.lo && p < support.hi); });
  std::sort(breakpoints.begin(), breakpoints.end());
  out.breaks_ = std::move(breakpoints);
  out.zero_ = false;
  return out;
}

SampledFunction SampledFunction::grid(double x0, double h, std::vector<double> samples) {
  if (!(h > 0.0)) throw ContractError("grid spacing must be positive");
  if (samples.size() < 2) throw ContractError("grid needs at least two samples");
  const double x1 = x0 + h * static_cast<double>(samples.size() - 1);
  std::vector<double> nodes;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) nodes.push_back(x0 + h * static_cast<double>(i));
  auto data = std::make_shared<std::vector<double>>(std::move(samples));
  auto g = [data, x0, h](double x) {
    const double u = (x - x0) / h;
    if (u < 0.0 || u > static_cast<double>(data->size() - 1)) return 0.0;
    const std::size_t i = std::min(data->size() - 2, static_cast<std::size_t>(u));
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * (*data)[i] + w * (*data)[i + 1];
  };
  return closed_form(g, {x0, x1}, std::move(nodes));
}

SampledFunction SampledFunction::indicator(double a, double b) {
  if (a == b) return zero();
  const double lo = std::min(a, b), hi = std::max(a, b);
  const double sign = a < b ? 1.0 : -1.0;
  return closed_form([lo, hi, sign](double t) { return (t >= lo && t < hi) ? sign : 0.0; },
                     {lo, hi});
}

SampledFunction SampledFunction::zero() { return SampledFunction(); }

double SampledFunction::operator()(double x) const {
  if (zero_ || x < support_.lo || x > support_.hi) return 0.0;
  return g_(x);
}

std::vector<double> SampledFunction::knots() const {
  std::vector<double> out;
  out.push_back(support_.lo);
  out.insert(out.end(), breaks_.begin(), breaks_.end());
  out.push_back(support_.hi);
  return out;
}

SampledFunction SampledFunction::reflected() const {
  if (zero_) return zero();
  std::vector<double> b;
  for (double p : breaks_) b.push_back(-p);
  auto g = g_;
  return closed_form([g](double x) { return g(-x); }, {-support_.hi, -support_.lo}, std::move(b));
}

namespace {

// Gamma(1+a)^{-1} ∫_0^∞ g(x + dir * v^{1/a}) dv, the Riemann-Liouville
// integral after the substitution v = |t - x|^a, split at the images of the
// knots of g.
double rl_integral(const SampledFunction& g, double alpha, double x, int dir,
                   const quad::Options& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("fractional order must lie in (0, 1)");
  if (g.is_zero()) return 0.0;
  std::vector<double> v;
  bool unbounded = false;
  for (double k : g.knots()) {
    const double dist = dir * (k - x);
    if (std::isinf(dist)) {
      if (dist > 0.0) unbounded = true;
      continue;
    }
    if (dist > 0.0) v.push_back(std::pow(dist, alpha));
  }
  if (v.empty() && !unbounded) return 0.0;
  // Include v = 0 when x lies inside the support.
  const Interval& sup = g.support();
  if (sup.contains(x) || (dir > 0 && sup.lo < x) || (dir < 0 && sup.hi > x)) v.push_back(0.0);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());

  const double inv = 1.0 / alpha;
  // Offsets below the spacing of doubles at x would evaluate g at x itself;
  // use the neighbouring double so one-sided limits survive.
  const double next = std::nextafter(x, dir * kInf);
  auto integrand = [&](double w) {
    const double y = x + dir * std::pow(w, inv);
    return g(w > 0.0 && y == x ? next : y);
  };
  double acc = v.size() > 1 ? quad::integrate_pieces(integrand, v, opts) : 0.0;
  if (unbounded) acc += quad::integrate(integrand, v.empty() ? 0.0 : v.back(), kInf, opts);
  return acc / std::tgamma(1.0 + alpha);
}

}  // namespace

double frac_int_minus(const SampledFunction& g, double alpha, double x, const quad::Options& opts) {
  return rl_integral(g, alpha, x, +1, opts);
}

double frac_int_plus(const SampledFunction& g, double alpha, double x, const quad::Options& opts) {
  return rl_integral(g, alpha, x, -1, opts);
}

FracPartsResult frac_parts_check(const SampledFunction& g, const SampledFunction& h,
                                 double alpha) {
  FracPartsResult out;
  if (g.is_zero() || h.is_zero()) return out;
  quad::Options inner;
  inner.rel_tol = 1e-11;

  // I_-^a g is supported on (-inf, sup g] and has kinks at the knots of g.
  auto outer_points = [](const SampledFunction& weight, const SampledFunction& other) {
    std::vector<double> pts = weight.knots();
    for (double k : other.knots()) {
      if (k > weight.support().lo && k < weight.support().hi) pts.push_back(k);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };
  auto integrate_over = [](const std::function<double(double)>& f, std::vector<double> pts) {
    if (std::isinf(pts.front()) || std::isinf(pts.back())) {
      throw ContractError("fractional parts check needs compactly supported functions");
    }
    return quad::integrate_pieces(f, pts);
  };

  out.lhs = integrate_over(
      [&](double x) {
        const double hx = h(x);
        return hx == 0.0 ? 0.0 : frac_int_minus(g, alpha, x, inner) * hx;
      },
      outer_points(h, g));
  out.rhs = integrate_over(
      [&](double x) {
        const double gx = g(x);
        return gx == 0.0 ? 0.0 : gx * frac_int_plus(h, alpha, x, inner);
      },
      outer_points(g, h));
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace clevy
