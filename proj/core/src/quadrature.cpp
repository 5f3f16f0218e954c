#include "clevy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "clevy/errors.hpp"

namespace clevy::quad {
namespace {

namespace bq = boost::math::quadrature;

bq::tanh_sinh<double>& tanh_sinh_engine(std::size_t refinements) {
  thread_local bq::tanh_sinh<double> engine(refinements);
  return engine;
}

bq::exp_sinh<double>& exp_sinh_engine(std::size_t refinements) {
  thread_local bq::exp_sinh<double> engine(refinements);
  return engine;
}

bq::sinh_sinh<double>& sinh_sinh_engine(std::size_t refinements) {
  thread_local bq::sinh_sinh<double> engine(refinements);
  return engine;
}

double checked(double value, double a, double b) {
  if (!std::isfinite(value)) {
    throw NumericalError("quadrature produced a non-finite value on [" + std::to_string(a) +
                         ", " + std::to_string(b) + "]");
  }
  return value;
}

}  // namespace

double integrate(const RealFn& f, double a, double b, const Options& opts) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, opts);
  const double tol = opts.rel_tol;
  const bool inf_a = std::isinf(a);
  const bool inf_b = std::isinf(b);
  double result = 0.0;
  try {
    if (inf_a && inf_b) {
      result = sinh_sinh_engine(opts.max_refinements).integrate(f, tol);
    } else if (inf_a || inf_b) {
      result = exp_sinh_engine(opts.max_refinements).integrate(f, a, b, tol);
    } else {
      result = tanh_sinh_engine(opts.max_refinements).integrate(f, a, b, tol);
    }
  } catch (const std::domain_error& e) {
    throw NumericalError(std::string("quadrature failed: ") + e.what());
  } catch (const boost::math::evaluation_error& e) {
    throw NumericalError(std::string("quadrature failed: ") + e.what());
  }
  return checked(result, a, b);
}

std::complex<double> integrate_complex(const ComplexFn& f, double a, double b, const Options& opts) {
  const double re = integrate([&](double x) { return f(x).real(); }, a, b, opts);
  const double im = integrate([&](double x) { return f(x).imag(); }, a, b, opts);
  return {re, im};
}

double integrate_pieces(const RealFn& f, std::span<const double> points, const Options& opts) {
  double acc = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] > points[i - 1]) acc += integrate(f, points[i - 1], points[i], opts);
  }
  return acc;
}

std::complex<double> integrate_pieces_complex(const ComplexFn& f, std::span<const double> points,
                                              const Options& opts) {
  std::complex<double> acc{};
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] > points[i - 1]) acc += integrate_complex(f, points[i - 1], points[i], opts);
  }
  return acc;
}

void Rule::append(const Rule& other) {
  nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  lags.insert(lags.end(), other.lags.begin(), other.lags.end());
}

namespace {

using GL16 = bq::gauss<double, 16>;

// Panel covering offsets [lo, hi] from `base`; nodes base + dir * offset,
// lags = offset.  Working in offsets keeps panel widths exact even when they
// are far below the spacing of doubles near `base`.
void add_panel(Rule& rule, double base, double dir, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  const auto& x = GL16::abscissa();
  const auto& w = GL16::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    // 16 is even: the abscissa table holds the positive half only.
    for (double sign : {-1.0, 1.0}) {
      const double off = mid + sign * half * x[i];
      rule.nodes.push_back(base + dir * off);
      rule.weights.push_back(half * w[i]);
      rule.lags.push_back(off);
    }
  }
}

}  // namespace

Rule gauss_legendre(double a, double b, std::size_t panels) {
  Rule rule;
  if (!(b > a) || panels == 0) return rule;
  const double width = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + width * static_cast<double>(p);
    const double hi = (p + 1 == panels) ? b : lo + width;
    add_panel(rule, b, -1.0, b - hi, b - lo);
  }
  return rule;
}

Rule graded(double a, double b, bool toward_lower, double ratio, double min_width) {
  Rule rule;
  if (!(b > a)) return rule;
  const double base = toward_lower ? a : b;
  const double dir = toward_lower ? 1.0 : -1.0;
  double len = b - a;
  while (len > min_width) {
    const double next = len * ratio;
    add_panel(rule, base, dir, next, len);
    len = next;
  }
  return rule;
}

}  // namespace clevy::quad
