#include "clevy/conv_process.hpp"

#include <algorithm>
#include <cmath>

#include "clevy/errors.hpp"
#include "clevy/quadrature.hpp"

namespace clevy {

Interval required_window(const VolterraKernel& k, double t) {
  return {std::min(k.s_lower(), 0.0), std::max(t, 0.0)};
}

namespace {

void require_cover(const VolterraKernel& k, const JumpPath& path, double t) {
  if (t <= 0.0) return;
  if (!path.window().covers({k.s_lower(), t})) {
    throw ContractError("path window does not cover the kernel support [" +
                        std::to_string(k.s_lower()) + ", " + std::to_string(t) + "]");
  }
}

}  // namespace

double conv_value_direct(const VolterraKernel& k, const JumpPath& path, double t) {
  if (t <= 0.0) return 0.0;
  require_cover(k, path, t);
  const double lo = k.s_lower();
  double acc = 0.0;
  for (const Jump& j : path.jumps()) {
    if (j.time > t) break;
    if (j.time < lo) continue;
    acc += k.eval_lag(t, t - j.time) * j.size;
  }
  if (path.drift_rate() != 0.0) acc += path.drift_rate() * k.integral(t);
  return acc;
}

ConvPath conv_path_direct(const VolterraKernel& k, const JumpPath& path,
                          const std::vector<double>& grid) {
  ConvPath out{grid, {}};
  out.values.reserve(grid.size());
  for (double t : grid) out.values.push_back(conv_value_direct(k, path, t));
  return out;
}

double conv_value_by_parts(const VolterraKernel& k, const JumpPath& path, double t) {
  if (!k.flags().all()) {
    throw ContractError("integration-by-parts route needs a kernel satisfying (H1)-(H4): " +
                        k.name());
  }
  if (t <= 0.0) return 0.0;
  require_cover(k, path, t);
  const double a = k.s_lower();
  double acc = k.diag(t) * path.levy(t) - k.eval(t, a) * path.levy(a);

  // L is linear between jumps; integrate piece by piece.
  std::vector<double> cuts{a};
  for (const Jump& j : path.jumps()) {
    if (j.time > a && j.time < t) cuts.push_back(j.time);
  }
  for (double b : k.breakpoints(t)) {
    if (b > a && b < t) cuts.push_back(b);
  }
  cuts.push_back(t);
  std::sort(cuts.begin(), cuts.end());
  const double drift = path.drift_rate();
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double lo = cuts[i - 1], hi = cuts[i];
    if (!(hi > lo)) continue;
    const double base = path.levy(lo);
    const quad::Rule rule = quad::gauss_legendre(lo, hi, 1);
    acc -= quad::apply(rule, [&](double s) { return (base + drift * (s - lo)) * k.dds(t, s); });
  }
  return acc;
}

ConvPath conv_path_by_parts(const VolterraKernel& k, const JumpPath& path,
                            const std::vector<double>& grid) {
  ConvPath out{grid, {}};
  out.values.reserve(grid.size());
  for (double t : grid) out.values.push_back(conv_value_by_parts(k, path, t));
  return out;
}

std::complex<double> conv_charfn_analytic(const VolterraKernel& k, const JumpMeasure& measure,
                                          double t, double u) {
  if (u == 0.0 || t <= 0.0) return {1.0, 0.0};
  const std::vector<double> pts = k.breakpoints(t);
  const std::complex<double> expo = quad::integrate_pieces_complex(
      [&](double s) { return char_exponent(measure, u * k.eval(t, s)); }, pts);
  return std::exp(expo);
}

double conv_variance_analytic(const VolterraKernel& k, const JumpMeasure& measure, double t) {
  if (t <= 0.0) return 0.0;
  return levy_variance(measure) * k.l2norm_sq(t);
}

JumpRelation check_jump_relation(const VolterraKernel& k, const JumpPath& path, double t_max) {
  JumpRelation out;
  for (const Jump& j : path.jumps()) {
    if (j.time <= 0.0) continue;
    if (j.time > t_max) break;
    const double delta = 1e-12 * std::max(1.0, j.time);
    const double dm = conv_value_direct(k, path, j.time) - conv_value_direct(k, path, j.time - delta);
    out.max_error = std::max(out.max_error, std::abs(dm - k.diag(j.time) * j.size));
    ++out.checked;
  }
  return out;
}

}  // namespace clevy
