#include "clevy/stransform.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "clevy/conv_process.hpp"
#include "clevy/errors.hpp"
#include "clevy/frac_ops.hpp"
#include "clevy/quadrature.hpp"

namespace clevy {

const char* to_string(SMethod method) {
  switch (method) {
    case SMethod::Reweight: return "reweight";
    case SMethod::Shifted: return "shifted";
    case SMethod::Analytic: return "analytic";
  }
  return "unknown";
}

const char* to_string(PredictableIntegrand x) {
  return x == PredictableIntegrand::Jump ? "X=y" : "X=yL(t-)";
}

namespace {

Interval windows_hull(const std::vector<PathFunctional>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  Interval w = xs.front().window;
  for (const auto& x : xs) w = w.hull(x.window);
  return w;
}

std::vector<STransformEstimate> collect(const std::vector<RunningStats>& stats, SMethod method,
                                        std::size_t n) {
  std::vector<STransformEstimate> out;
  for (std::size_t i = 0; i + 1 < stats.size(); i += 2) {
    STransformEstimate e;
    e.value = {stats[i].mean(), stats[i + 1].mean()};
    e.std_error_re = stats[i].stderr_of_mean();
    e.std_error_im = stats[i + 1].stderr_of_mean();
    e.std_error = std::hypot(e.std_error_re, e.std_error_im);
    e.method = method;
    e.n = n;
    out.push_back(e);
  }
  return out;
}

void store(std::span<double> out, std::size_t i, std::complex<double> v, const PathFunctional& x,
           const JumpPath& path) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw PoisonedEstimateError("functional " + x.name + " is not finite on path " +
                                std::to_string(path.key().path) + " (seed " +
                                std::to_string(path.key().seed) + ")");
  }
  out[2 * i] = v.real();
  out[2 * i + 1] = v.imag();
}

// Points where the integrand of an s-integral up to t may be non-smooth.
std::vector<double> s_points(const VolterraKernel& k, double t, const EtaTest& eta) {
  std::vector<double> pts = k.breakpoints(t);
  const Interval sup = eta.time_support();
  const double lo = std::max(k.s_lower(), sup.lo);
  const double hi = std::min(t, sup.hi);
  std::erase_if(pts, [&](double p) { return p < lo || p > hi; });
  pts.push_back(lo);
  pts.push_back(hi);
  if (lo < 0.0 && hi > 0.0) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::vector<STransformEstimate> stransform_reweight(const std::vector<PathFunctional>& xs,
                                                    const EtaTest& eta,
                                                    const JumpMeasure& measure,
                                                    const EnsembleConfig& cfg) {
  const WickWeight weight(eta, measure);
  Interval window = windows_hull(xs);
  if (!eta.is_zero()) window = window.hull(eta.time_support());
  auto stats = run_ensemble(cfg, 2 * xs.size(), [&](std::uint64_t i, std::span<double> out) {
    const JumpPath path = simulate_path(measure, window, {cfg.seed, cfg.family, i, 0});
    const double w = weight(path);
    for (std::size_t q = 0; q < xs.size(); ++q) store(out, q, w * xs[q].eval(path), xs[q], path);
  });
  return collect(stats, SMethod::Reweight, cfg.paths);
}

std::vector<STransformEstimate> stransform_shifted(const std::vector<PathFunctional>& xs,
                                                   const EtaTest& eta,
                                                   const JumpMeasure& measure,
                                                   const EnsembleConfig& cfg) {
  const Interval window = windows_hull(xs);
  auto stats = run_ensemble(cfg, 2 * xs.size(), [&](std::uint64_t i, std::span<double> out) {
    const JumpPath path = simulate_path_shifted(measure, eta, window, {cfg.seed, cfg.family, i, 0});
    for (std::size_t q = 0; q < xs.size(); ++q) store(out, q, xs[q].eval(path), xs[q], path);
  });
  return collect(stats, SMethod::Shifted, cfg.paths);
}

PathFunctional functional_M(const VolterraKernel& k, double t) {
  return {"M(" + std::to_string(t) + ")", required_window(k, t),
          [k, t](const JumpPath& p) { return std::complex<double>(conv_value_direct(k, p, t)); }};
}

PathFunctional functional_M_power(const VolterraKernel& k, double t, int power) {
  return {"M(" + std::to_string(t) + ")^" + std::to_string(power), required_window(k, t),
          [k, t, power](const JumpPath& p) {
            return std::complex<double>(std::pow(conv_value_direct(k, p, t), power));
          }};
}

PathFunctional functional_exp_iuM(const VolterraKernel& k, double t, double u) {
  return {"exp(iuM(" + std::to_string(t) + "))", required_window(k, t),
          [k, t, u](const JumpPath& p) {
            return std::exp(std::complex<double>(0.0, u * conv_value_direct(k, p, t)));
          }};
}

PathFunctional functional_wick(const EtaTest& f, const JumpMeasure& measure) {
  auto w = std::make_shared<WickWeight>(f, measure);
  return {"wick[" + f.id() + "]", f.time_support(),
          [w](const JumpPath& p) { return std::complex<double>(w->product(p)); }};
}

double eta_first_moment(const EtaTest& eta, const JumpMeasure& measure) {
  return eta.x_integral(measure, [](double y) { return y; });
}

double s_of_M_analytic(const VolterraKernel& k, const JumpMeasure& measure, double t,
                       const EtaTest& eta) {
  if (t <= 0.0 || eta.is_zero()) return 0.0;
  const double a = eta_first_moment(eta, measure);
  if (a == 0.0) return 0.0;
  const std::vector<double> pts = s_points(k, t, eta);
  if (pts.size() < 2) return 0.0;
  return a * quad::integrate_pieces(
                 [&](double s) { return k.eval_lag(t, t - s) * eta.time_profile(s); }, pts);
}

std::complex<double> s_charfn_analytic(const VolterraKernel& k, const JumpMeasure& measure,
                                       double t, double u, const EtaTest& eta) {
  if (u == 0.0 || t <= 0.0) return {1.0, 0.0};
  const std::complex<double> iu(0.0, u);
  std::complex<double> expo = iu * s_of_M_analytic(k, measure, t, eta);
  const std::vector<double> pts = k.breakpoints(t);
  expo += quad::integrate_pieces_complex(
      [&](double s) {
        const double v = u * k.eval_lag(t, t - s);
        std::complex<double> acc = char_exponent(measure, v);
        if (!eta.is_zero() && v != 0.0) {
          const double q = eta.time_profile(s);
          if (q > 0.0) {
            acc += q * eta.amplitude() *
                   measure.integrate_complex([&](double x) {
                     return (std::exp(std::complex<double>(0.0, v * x)) -
                             std::complex<double>(1.0, v * x)) *
                            eta.x_profile(x);
                   });
          }
        }
        return acc;
      },
      pts);
  return std::exp(expo);
}

double ddt_s_of_M(const VolterraKernel& k, const JumpMeasure& measure, double t,
                  const EtaTest& eta) {
  const bool fractional = k.kind() == KernelKind::Fractional;
  if (!fractional && !k.flags().h4) {
    throw UnsupportedError("d/dt S(M(t)) needs (H4) or a fractional kernel: " + k.name());
  }
  if (t <= 0.0 || eta.is_zero()) return 0.0;
  const double a = eta_first_moment(eta, measure);
  if (a == 0.0) return 0.0;
  if (fractional) {
    const Interval sup = eta.time_support();
    const Interval dom{std::max(k.s_lower(), sup.lo), sup.hi};
    if (!(dom.hi > dom.lo)) return 0.0;
    std::vector<double> br;
    if (dom.lo < 0.0 && dom.hi > 0.0) br.push_back(0.0);
    const auto h = SampledFunction::closed_form(
        [&eta, a](double s) { return a * eta.time_profile(s); }, dom, br);
    return frac_int_plus(h, k.diagonal_order(), t);
  }
  const std::vector<double> pts = s_points(k, t, eta);
  double acc = a * k.diag(t) * eta.time_profile(t);
  if (pts.size() >= 2) {
    acc += a * quad::integrate_pieces(
                   [&](double s) { return k.ddt_lag(t, t - s) * eta.time_profile(s); }, pts);
  }
  return acc;
}

double s_of_levy(const JumpMeasure& measure, double t, const EtaTest& eta) {
  if (t <= 0.0 || eta.is_zero()) return 0.0;
  return eta_first_moment(eta, measure) * eta.time_integral(0.0, t);
}

double ito_integral_pathwise(PredictableIntegrand x, const JumpPath& path, double T,
                             double first_moment) {
  if (x == PredictableIntegrand::Jump) return path.levy(T);
  // Σ L(s_j-) x_j - (∫ y nu) ∫_0^T L(t) dt, with L linear between jumps.
  double sum = 0.0;
  double area = 0.5 * path.drift_rate() * T * T;
  double running = 0.0;
  for (const Jump& j : path.jumps()) {
    if (j.time <= 0.0) continue;
    if (j.time > T) break;
    sum += (running + path.drift_rate() * j.time) * j.size;
    running += j.size;
    area += j.size * (T - j.time);
  }
  return sum - first_moment * area;
}

IdentityResidual ito_integral_stransform_check(PredictableIntegrand x, const JumpMeasure& measure,
                                               double T, const EtaTest& eta,
                                               const EnsembleConfig& cfg, double sigmas) {
  const double m1 = measure.first_moment();
  PathFunctional phi{to_string(x), {0.0, T}, [x, T, m1](const JumpPath& p) {
                       return std::complex<double>(ito_integral_pathwise(x, p, T, m1));
                     }};
  const STransformEstimate lhs = stransform_shifted({phi}, eta, measure, cfg).front();
  double rhs = 0.0;
  if (!eta.is_zero()) {
    const double a = eta_first_moment(eta, measure);
    if (x == PredictableIntegrand::Jump) {
      rhs = a * eta.time_integral(0.0, T);
    } else {
      // ∫_0^T S(L(t))(eta) h(t) dt
      rhs = quad::integrate(
          [&](double t) { return s_of_levy(measure, t, eta) * a * eta.time_profile(t); }, 0.0, T);
    }
  }
  return make_residual(std::string("ito-integral[") + to_string(x) + "]", eta.id(),
                       lhs.value.real(), rhs, lhs.std_error, 0.0, sigmas);
}

PathFunctional malliavin_wick(const EtaTest& f, const JumpMeasure& measure, double y, double s) {
  PathFunctional w = functional_wick(f, measure);
  const double fy = f(y, s);
  auto inner = w.eval;
  w.name = "D_{y,s}" + w.name;
  w.eval = [inner, fy](const JumpPath& p) { return fy == 0.0 ? 0.0 : fy * inner(p); };
  return w;
}

IdentityResidual simple_field_identity_check(const EtaTest& f, const std::vector<double>& atoms,
                                             double a, double b, const EtaTest& eta,
                                             const JumpMeasure& measure,
                                             const EnsembleConfig& cfg, double sigmas) {
  if (measure.density()) {
    throw PreconditionError("simple-field identity needs a purely atomic Lévy measure");
  }
  std::set<double> chosen(atoms.begin(), atoms.end());
  double rate_a = 0.0;
  std::vector<Atom> in_a;
  for (const Atom& at : measure.atoms()) {
    if (chosen.count(at.size)) {
      rate_a += at.rate;
      in_a.push_back(at);
    }
  }
  const PathFunctional wick = functional_wick(f, measure);
  Interval window{std::min(a, 0.0), std::max(b, 0.0)};
  if (!f.is_zero()) window = window.hull(f.time_support());
  PathFunctional x{"F*N~(A,(a,b])", window, [=](const JumpPath& p) {
                     double count = 0.0;
                     for (const Jump& j : p.jumps()) {
                       if (j.time > a && j.time <= b && chosen.count(j.size)) count += 1.0;
                     }
                     return wick.eval(p) * (count - rate_a * (b - a));
                   }};
  const STransformEstimate lhs = stransform_shifted({x}, eta, measure, cfg).front();

  double rhs = 0.0;
  if (b > a) {
    for (const Atom& at : in_a) {
      std::vector<double> pts{a, b};
      if (a < 0.0 && b > 0.0) pts.insert(pts.begin() + 1, 0.0);
      rhs += at.rate * quad::integrate_pieces(
                           [&](double t) {
                             const double e = eta(at.size, t), g = f(at.size, t);
                             return e + g + e * g;
                           },
                           pts);
    }
    rhs *= std::exp(eta_pairing(f, eta, measure));
  }
  return make_residual("simple-field[" + f.id() + "]", eta.id(), lhs.value.real(), rhs,
                       lhs.std_error, 0.0, sigmas);
}

}  // namespace clevy
