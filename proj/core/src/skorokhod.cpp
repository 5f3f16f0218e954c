#include "clevy/skorokhod.hpp"

#include <algorithm>
#include <cmath>

#include "clevy/conv_process.hpp"
#include "clevy/errors.hpp"
#include "clevy/quadrature.hpp"

namespace clevy {

double skorokhod_quadratic(const VolterraKernel& k, const JumpPath& path, double T) {
  const double m = conv_value_direct(k, path, T);
  double sq = 0.0;
  const double lo = k.s_lower();
  for (const Jump& j : path.jumps()) {
    if (j.time > T) break;
    if (j.time < lo) continue;
    const double v = k.eval_lag(T, T - j.time) * j.size;
    sq += v * v;
  }
  return 0.5 * (m * m - sq);
}

PathFunctional functional_skorokhod_quadratic(const VolterraKernel& k, double T) {
  return {"2*int M dM°", required_window(k, T), [k, T](const JumpPath& p) {
            return std::complex<double>(2.0 * skorokhod_quadratic(k, p, T));
          }};
}

IdentityResidual quadratic_stransform_check(const VolterraKernel& k, const JumpMeasure& measure,
                                            double T, const EtaTest& eta,
                                            const EnsembleConfig& cfg, double sigmas) {
  const auto est = stransform_shifted({functional_skorokhod_quadratic(k, T)}, eta, measure, cfg);
  const double m = s_of_M_analytic(k, measure, T, eta);
  return make_residual("quadratic[" + k.name() + "]", eta.id(), est.front().value.real(), m * m,
                       est.front().std_error, 0.0, sigmas);
}

IdentityResidual increment_check(const VolterraKernel& k, const JumpMeasure& measure, double a,
                                 double b, const EtaTest& eta, const EnsembleConfig& cfg,
                                 double sigmas) {
  PathFunctional inc{"M(b)-M(a)", required_window(k, b), [k, a, b](const JumpPath& p) {
                       return std::complex<double>(conv_value_direct(k, p, b) -
                                                   conv_value_direct(k, p, a));
                     }};
  const auto est = stransform_shifted({inc}, eta, measure, cfg);
  double rhs = 0.0;
  if (b > a && !eta.is_zero()) {
    quad::Options opts;
    opts.rel_tol = 1e-9;
    rhs = quad::integrate([&](double t) { return ddt_s_of_M(k, measure, t, eta); },
                          std::max(a, 0.0), std::max(b, 0.0), opts);
  }
  return make_residual("increment[" + k.name() + "]", eta.id(), est.front().value.real(), rhs,
                       est.front().std_error, 0.0, sigmas);
}

double memory_correction(const VolterraKernel& k, const JumpPath& path, double a, double b) {
  double acc = 0.0;
  const double lo = k.s_lower();
  for (const Jump& j : path.jumps()) {
    if (j.time > a) break;
    if (j.time < lo) continue;
    const double fa = k.eval_lag(a, a - j.time);
    const double fb = k.eval_lag(b, b - j.time);
    acc += fa * (fb - fa) * j.size * j.size;
  }
  return acc;
}

double memory_correction_expectation(const VolterraKernel& k, const JumpMeasure& measure,
                                     double a, double b, const EtaTest& eta) {
  if (a <= 0.0) return 0.0;
  const double m2 = measure.second_moment();
  const double m2_eta = eta.x_integral(measure, [](double y) { return y * y; });
  std::vector<double> pts = k.breakpoints(a);
  for (double p : k.breakpoints(b)) {
    if (p > pts.front() && p < a) pts.push_back(p);
  }
  if (!eta.is_zero() && k.s_lower() < 0.0) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return quad::integrate_pieces(
      [&](double s) {
        const double fa = k.eval_lag(a, a - s);
        const double fb = k.eval_lag(b, b - s);
        return fa * (fb - fa) * (m2 + m2_eta * eta.time_profile(s));
      },
      pts);
}

MemoryCorrectionReport memory_correction_check(const VolterraKernel& k,
                                               const JumpMeasure& measure, double a, double b,
                                               const EtaTest& eta, const EnsembleConfig& cfg,
                                               double sigmas) {
  const Interval win = required_window(k, b);
  // Paired estimates: the difference is estimated path by path.
  PathFunctional product{"M(a)(M(b)-M(a))", win, [k, a, b](const JumpPath& p) {
                           const double ma = conv_value_direct(k, p, a);
                           return std::complex<double>(ma * (conv_value_direct(k, p, b) - ma));
                         }};
  PathFunctional corr{"correction", win, [k, a, b](const JumpPath& p) {
                        return std::complex<double>(memory_correction(k, p, a, b));
                      }};
  PathFunctional diff{"product-correction", win, [product, corr](const JumpPath& p) {
                        return product.eval(p) - corr.eval(p);
                      }};
  const auto est = stransform_shifted({product, corr, diff}, eta, measure, cfg);
  const double ma = s_of_M_analytic(k, measure, a, eta);
  const double mb = s_of_M_analytic(k, measure, b, eta);
  const double skor = ma * (mb - ma);

  MemoryCorrectionReport rep;
  rep.product_rule = make_residual("memory-product[" + k.name() + "]", eta.id(),
                                   est[0].value.real(), skor + est[1].value.real(),
                                   est[2].std_error, 0.0, sigmas);
  rep.correction_mean = make_residual("memory-correction[" + k.name() + "]", eta.id(),
                                      est[1].value.real(),
                                      memory_correction_expectation(k, measure, a, b, eta),
                                      est[1].std_error, 0.0, sigmas);
  return rep;
}

namespace {

// ∫_{lo}^{hi} g(t) (t - s)^{d-1} / Gamma(d) dt with panels graded toward s
// when lo == s; the dropped sliver next to s is integrated with g frozen.
double singular_weight_integral(const SampledFunction& g, double d, double s, double lo,
                                double hi) {
  std::vector<double> cuts{lo};
  for (double kn : g.knots()) {
    if (kn > lo && kn < hi) cuts.push_back(kn);
  }
  cuts.push_back(hi);
  const double gd = std::tgamma(d);
  double acc = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = cuts[i - 1], b = cuts[i];
    auto w = [&](double t) { return g(t) * std::pow(t - s, d - 1.0) / gd; };
    constexpr double kRatio = 0.2;
    // Grade toward a until panels are small compared with a - s.
    const double floor = std::max(1e-15 * std::max(1.0, b - a), 0.5 * (a - s));
    const quad::Rule rule = quad::graded(a, b, true, kRatio, floor);
    if (a == s) {
      for (std::size_t n = 0; n < rule.size(); ++n) {
        acc += rule.weights[n] * g(rule.nodes[n]) * std::pow(rule.lags[n], d - 1.0) / gd;
      }
    } else {
      acc += quad::apply(rule, w);
    }
    const double rest = (b - a) * std::pow(kRatio, static_cast<double>(rule.size() / 16));
    if (a == s) {
      acc += g(a + 0.5 * rest) * std::pow(rest, d) / (d * gd);
    } else {
      acc += quad::apply(quad::gauss_legendre(a, a + rest, 1), w);
    }
  }
  return acc;
}

}  // namespace

WienerPair wiener_type_equiv(const SampledFunction& g, const VolterraKernel& k,
                             const JumpPath& path) {
  if (k.kind() != KernelKind::Fractional) {
    throw ContractError("wiener_type_equiv needs a fractional kernel");
  }
  WienerPair out;
  if (g.is_zero()) return out;
  const Interval sup = g.support();
  if (sup.lo < 0.0 || !std::isfinite(sup.hi)) {
    throw ContractError("integrand must be supported in a bounded subset of [0, inf)");
  }
  const double d = k.diagonal_order();
  const double lo = k.s_lower();
  if (!path.window().covers({lo, sup.hi})) {
    throw ContractError("path window does not cover [s_lower, sup g]");
  }
  for (const Jump& j : path.jumps()) {
    if (j.time < lo) continue;
    if (j.time >= sup.hi) break;
    out.lhs += frac_int_minus(g, d, j.time) * j.size;
    const double from = std::max(j.time, sup.lo);
    out.rhs += singular_weight_integral(g, d, j.time, from, sup.hi) * j.size;
  }
  const double drift = path.drift_rate();
  if (drift != 0.0) {
    std::vector<double> pts = g.knots();
    pts.insert(pts.begin(), lo);
    if (sup.lo > 0.0) pts.insert(pts.begin() + 1, 0.0);
    out.lhs += drift * quad::integrate_pieces([&](double s) { return frac_int_minus(g, d, s); }, pts);
    out.rhs += drift * quad::integrate_pieces([&](double t) { return g(t) * k.integral_dt(t); },
                                              g.knots());
  }
  return out;
}

std::vector<IdentityResidual> zero_expectation_suite(const std::vector<PathFunctional>& xs,
                                                     const JumpMeasure& measure,
                                                     const EnsembleConfig& cfg, double sigmas) {
  const auto est = stransform_shifted(xs, EtaTest::zero(), measure, cfg);
  std::vector<IdentityResidual> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.push_back(make_residual("zero-mean[" + xs[i].name + "]", "zero", est[i].value.real(), 0.0,
                                est[i].std_error, 0.0, sigmas));
  }
  return out;
}

}  // namespace clevy
