#include "clevy/ito_verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "clevy/conv_process.hpp"
#include "clevy/errors.hpp"

namespace clevy {

double GaussianG::operator()(double y) const { return std::exp(-y * y / (2.0 * sigma * sigma)); }

double GaussianG::d1(double y) const { return -y / (sigma * sigma) * (*this)(y); }

double GaussianG::fourier(double u) const { return sigma * std::exp(-0.5 * sigma * sigma * u * u); }

double GaussianG::u_cutoff() const {
  double u = 1.0 / sigma;
  while (std::pow(1.0 + u, 3) * fourier(u) >= 1e-16) u += 0.25 / sigma;
  return u;
}

std::string GaussianG::id() const {
  std::ostringstream os;
  os << "gauss(sigma=" << sigma << ")";
  return os.str();
}

quad::Rule kernel_s_rule(const VolterraKernel& k, double t) {
  quad::Rule out;
  if (t <= 0.0) return out;
  auto push = [&](double s, double w, double lag) {
    out.nodes.push_back(s);
    out.weights.push_back(w);
    out.lags.push_back(lag);
  };
  if (k.kind() == KernelKind::Fractional) {
    const double d = k.diagonal_order();
    const double inv = 1.0 / d;
    const double cutoff = -k.s_lower();
    // [0, t]: s = t - v^{1/d}
    const quad::Rule v = quad::gauss_legendre(0.0, std::pow(t, d), 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double lag = std::pow(v.nodes[i], inv);
      push(t - lag, v.weights[i] * inv * std::pow(v.nodes[i], inv - 1.0), lag);
    }
    // [-b1, 0): s = -w^{1/d}, graded toward w = 0 where (t - s)^{d-1} varies fastest.
    const double b1 = std::min(1.0, cutoff);
    const double top = std::pow(b1, d);
    constexpr double kRatio = 0.2;
    quad::Rule w = quad::graded(0.0, top, true, kRatio, 1e-3 * std::min(top, std::pow(t, d)));
    const double rest = top * std::pow(kRatio, static_cast<double>(w.size() / 16));
    w.append(quad::gauss_legendre(0.0, rest, 1));
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double a = std::pow(w.nodes[i], inv);
      push(-a, w.weights[i] * inv * std::pow(w.nodes[i], inv - 1.0), t + a);
    }
    // [-cutoff, -1]: smooth, doubling panels.
    for (double lo = b1; lo < cutoff;) {
      const double hi = std::min(2.0 * lo, cutoff);
      const quad::Rule g = quad::gauss_legendre(-hi, -lo, 1);
      for (std::size_t i = 0; i < g.size(); ++i) push(g.nodes[i], g.weights[i], t - g.nodes[i]);
      lo = hi;
    }
    return out;
  }
  const std::vector<double> pts = k.breakpoints(t);
  for (std::size_t p = 1; p < pts.size(); ++p) {
    const double a = pts[p - 1], b = pts[p];
    if (!(b > a)) continue;
    const auto panels = static_cast<std::size_t>(std::max(2.0, std::ceil(4.0 * (b - a))));
    const quad::Rule g = quad::gauss_legendre(a, b, panels);
    for (std::size_t i = 0; i < g.size(); ++i) push(g.nodes[i], g.weights[i], (t - b) + g.lags[i]);
  }
  return out;
}

struct ItoEngine::Slice {
  std::vector<double> w, f, df;
  std::vector<double> e;  // 1 + eta(x_k, s_n), atom-major
  double diag = 0.0;
  double m = 0.0;
  double m_prime = 0.0;
  double coeff = 0.0;
};

ItoEngine::ItoEngine(VolterraKernel k, const JumpMeasure& measure, EtaTest eta, GaussianG g,
                     ItoOptions opts)
    : k_(std::move(k)), measure_(measure), eta_(std::move(eta)), g_(g), opts_(opts) {
  const bool fractional = k_.kind() == KernelKind::Fractional;
  if (!fractional && !k_.flags().all()) {
    throw ContractError("Itô formulas need a kernel satisfying (H1)-(H4): " + k_.name());
  }
  if (!(g_.sigma > 0.0)) throw ConfigError("G scale must be positive");
  atoms_ = measure_.empty() ? std::vector<Atom>{} : measure_.discretize();
  first_moment_ = measure_.empty() ? 0.0 : measure_.first_moment();
  const double cut = g_.u_cutoff();
  const auto n = static_cast<std::size_t>(std::ceil(cut / opts_.u_step));
  for (std::size_t m = 0; m <= n; ++m) {
    u_nodes_.push_back(opts_.u_step * static_cast<double>(m));
    u_weights_.push_back(m == 0 ? 0.5 * opts_.u_step : opts_.u_step);
  }
}

ItoEngine::Slice ItoEngine::slice(double t) const {
  Slice sl;
  if (t <= 0.0) return sl;
  const quad::Rule rule = kernel_s_rule(k_, t);
  const bool has_ddt = k_.kind() == KernelKind::Fractional || k_.flags().h4;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    sl.w.push_back(rule.weights[i]);
    sl.f.push_back(k_.eval_lag(t, rule.lags[i]));
    sl.df.push_back(has_ddt ? k_.ddt_lag(t, rule.lags[i]) : 0.0);
    sl.coeff += rule.weights[i] * sl.df.back();
  }
  sl.e.resize(atoms_.size() * rule.size());
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    for (std::size_t i = 0; i < rule.size(); ++i) {
      sl.e[a * rule.size() + i] = 1.0 + eta_(atoms_[a].size, rule.nodes[i]);
    }
  }
  sl.diag = k_.diag(t);
  sl.coeff += sl.diag;
  sl.m = s_of_M_analytic(k_, measure_, t, eta_);
  sl.m_prime = ddt_s_of_M(k_, measure_, t, eta_);
  return sl;
}

namespace {

std::complex<double> cis_minus_one(double z) {
  return compensated_cis(z) + std::complex<double>(0.0, z);
}

}  // namespace

std::complex<double> ItoEngine::charfn(double t, double u) const {
  const Slice sl = slice(t);
  std::complex<double> expo(0.0, u * sl.m);
  const std::size_t n = sl.w.size();
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      expo += sl.w[i] * atoms_[a].rate * sl.e[a * n + i] *
              compensated_cis(u * atoms_[a].size * sl.f[i]);
    }
  }
  return std::exp(expo);
}

ItoRates ItoEngine::rates(double t) const {
  ItoRates r;
  const Slice sl = slice(t);
  const std::size_t n = sl.w.size();
  const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi);  // 2 Re ∫_0^∞ over (2π)^{1/2}
  std::vector<double> jump_w(atoms_.size());
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    jump_w[a] = atoms_[a].rate * (1.0 + eta_(atoms_[a].size, t));
  }
  for (std::size_t m = 0; m < u_nodes_.size(); ++m) {
    const double u = u_nodes_[m];
    std::complex<double> expo(0.0, u * sl.m);
    std::complex<double> mem{}, mem_full{};
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      const double x = atoms_[a].size;
      for (std::size_t i = 0; i < n; ++i) {
        const double z = u * x * sl.f[i];
        const double e = sl.e[a * n + i];
        const std::complex<double> c1 = compensated_cis(z);
        expo += sl.w[i] * atoms_[a].rate * e * c1;
        if (sl.df[i] != 0.0) {
          const double coef = sl.w[i] * sl.df[i] * atoms_[a].rate * x * e;
          const std::complex<double> cm1 = c1 + std::complex<double>(0.0, z);
          mem += coef * cm1;
          mem_full += coef * (cm1 + 1.0);
        }
      }
    }
    const std::complex<double> F = norm * u_weights_[m] * g_.fourier(u) * std::exp(expo);
    const std::complex<double> iuF(0.0, u);
    r.sg_prime += (iuF * F).real();
    r.memory += (iuF * F * mem).real();
    r.memory_full += (iuF * F * mem_full).real();
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      const double b = atoms_[a].size * sl.diag;
      if (b == 0.0) continue;
      r.jump += jump_w[a] * (F * compensated_cis(u * b)).real();
      r.jump_full += jump_w[a] * (F * cis_minus_one(u * b)).real();
    }
  }
  r.drift = r.sg_prime * sl.m_prime;
  r.coeff = sl.coeff;
  return r;
}

double ItoEngine::s_of_G(double t) const {
  const Slice sl = slice(t);
  const std::size_t n = sl.w.size();
  const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi);
  double acc = 0.0;
  for (std::size_t m = 0; m < u_nodes_.size(); ++m) {
    const double u = u_nodes_[m];
    std::complex<double> expo(0.0, u * sl.m);
    for (std::size_t a = 0; a < atoms_.size(); ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        expo += sl.w[i] * atoms_[a].rate * sl.e[a * n + i] *
                compensated_cis(u * atoms_[a].size * sl.f[i]);
      }
    }
    acc += norm * u_weights_[m] * g_.fourier(u) * std::exp(expo).real();
  }
  return acc;
}

ItoTerms ItoEngine::terms(double T) const {
  ItoTerms out;
  out.first_moment = first_moment_;
  if (T <= 0.0) return out;
  quad::Rule rule;
  if (k_.kind() == KernelKind::Fractional) {
    rule = quad::graded(0.0, T, true, opts_.t_ratio, opts_.t_floor * T);
  } else {
    rule = quad::gauss_legendre(0.0, T, static_cast<std::size_t>(std::max(4.0, std::ceil(4.0 * T))));
  }
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const ItoRates r = rates(rule.nodes[i]);
    const double w = rule.weights[i];
    out.term_i += w * r.jump;
    out.term_ii += w * r.memory;
    out.term_iii += w * r.drift;
    out.jump_full += w * r.jump_full;
    out.memory_full += w * r.memory_full;
    out.drift_full += w * r.sg_prime * r.coeff;
  }
  out.lhs = s_of_G(T) - g_(0.0);
  return out;
}

double s_of_G_of_M(const VolterraKernel& k, const JumpMeasure& measure, double t,
                   const EtaTest& eta, const GaussianG& g) {
  return ItoEngine(k, measure, eta, g).s_of_G(t);
}

double conv_value_left(const VolterraKernel& k, const JumpPath& path, double t) {
  if (t <= 0.0) return 0.0;
  const double lo = k.s_lower();
  double acc = 0.0;
  for (const Jump& j : path.jumps()) {
    if (j.time >= t) break;
    if (j.time < lo) continue;
    acc += k.eval_lag(t, t - j.time) * j.size;
  }
  if (path.drift_rate() != 0.0) acc += path.drift_rate() * k.integral(t);
  return acc;
}

double ito_jump_sum(const VolterraKernel& k, const JumpPath& path, const GaussianG& g, double T) {
  double acc = 0.0;
  for (const Jump& j : path.jumps()) {
    if (j.time <= 0.0) continue;
    if (j.time > T) break;
    const double dm = k.diag(j.time) * j.size;
    if (dm == 0.0) continue;
    const double ml = conv_value_left(k, path, j.time);
    acc += g(ml + dm) - g(ml) - g.d1(ml) * dm;
  }
  return acc;
}

double ito1_pathwise_remainder(const VolterraKernel& k, const JumpPath& path, const GaussianG& g,
                               double T, double first_moment) {
  if (!k.flags().all()) {
    throw ContractError("Itô formula I needs a kernel satisfying (H1)-(H4): " + k.name());
  }
  double acc = g(conv_value_direct(k, path, T)) - g(0.0);
  std::vector<double> cuts{0.0};
  for (const Jump& j : path.jumps()) {
    if (j.time <= 0.0) continue;
    if (j.time > T) break;
    const double ml = conv_value_left(k, path, j.time);
    acc -= g(ml + k.diag(j.time) * j.size) - g(ml);
    if (j.time < T) cuts.push_back(j.time);
  }
  cuts.push_back(T);
  if (first_moment != 0.0) {
    double integral = 0.0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (!(cuts[i] > cuts[i - 1])) continue;
      const quad::Rule rule = quad::gauss_legendre(cuts[i - 1], cuts[i], 2);
      integral += quad::apply(rule, [&](double t) {
        return g.d1(conv_value_direct(k, path, t)) * k.integral_dt(t);
      });
    }
    acc += first_moment * integral;
  }
  return acc;
}

Ito2Report ito2_residual(const VolterraKernel& k, const JumpMeasure& measure, const GaussianG& g,
                         double T, const EtaTest& eta, const EnsembleConfig& cfg, double rel_tol,
                         double sigmas) {
  Ito2Report rep;
  const ItoEngine engine(k, measure, eta, g);
  rep.terms = engine.terms(T);
  const ItoTerms& tm = rep.terms;
  const std::string tag = k.name() + "," + g.id();
  rep.identity = make_residual("ito2[" + tag + "]", eta.id(), tm.lhs, tm.rhs(), 0.0,
                               rel_tol * std::abs(tm.lhs), sigmas);

  const Interval win = required_window(k, T);
  PathFunctional jumps{"jump-sum", win, [k, g, T](const JumpPath& p) {
                         return std::complex<double>(ito_jump_sum(k, p, g, T));
                       }};
  PathFunctional rest{"remainder", win, [k, g, T](const JumpPath& p) {
                        return std::complex<double>(g(conv_value_direct(k, p, T)) - g(0.0) -
                                                    ito_jump_sum(k, p, g, T));
                      }};
  const auto est = stransform_shifted({jumps, rest}, eta, measure, cfg);
  rep.jump_mc = make_residual("ito2-jumps[" + tag + "]", eta.id(), est[0].value.real(), tm.term_i,
                              est[0].std_error, 0.0, sigmas);
  rep.remainder_mc = make_residual("ito2-skorokhod[" + tag + "]", eta.id(), est[1].value.real(),
                                   tm.term_ii + tm.term_iii, est[1].std_error,
                                   rel_tol * std::abs(tm.lhs), sigmas);
  return rep;
}

IdentityResidual ito1_from_ito2_rearrangement_check(const VolterraKernel& k,
                                                    const JumpMeasure& measure,
                                                    const GaussianG& g, double T,
                                                    const EtaTest& eta, double tol) {
  const ItoTerms tm = ItoEngine(k, measure, eta, g).terms(T);
  return make_residual("ito1-rearrangement[" + k.name() + "," + g.id() + "]", eta.id(), tm.rhs(),
                       tm.rhs_ito1(), 0.0, tol, 0.0);
}

IdentityResidual derivative_consistency(const VolterraKernel& k, const JumpMeasure& measure,
                                        const GaussianG& g, const EtaTest& eta,
                                        const std::vector<double>& ts, double tol) {
  const ItoEngine engine(k, measure, eta, g);
  double worst = -1.0, fd_worst = 0.0, rate_worst = 0.0;
  for (double t : ts) {
    const double h = 1e-4 * std::max(1.0, t);
    if (t - h <= 0.0 || t + h > k.t_upper()) {
      throw ContractError("derivative check point too close to the kernel domain boundary");
    }
    const double fd = (engine.s_of_G(t + h) - engine.s_of_G(t - h)) / (2.0 * h);
    const double rate = engine.rates(t).total();
    if (std::abs(fd - rate) > worst) {
      worst = std::abs(fd - rate);
      fd_worst = fd;
      rate_worst = rate;
    }
  }
  return make_residual("ito-derivative[" + k.name() + "," + g.id() + "]", eta.id(), fd_worst,
                       rate_worst, 0.0, tol, 0.0);
}

IdentityResidual ito1_residual(const VolterraKernel& k, const JumpMeasure& measure,
                               const GaussianG& g, double T, const EnsembleConfig& cfg,
                               double sigmas, double abs_tol) {
  if (!(measure.abs_moment(1) < kInf)) {
    throw PreconditionError("Itô formula I needs ∫|x| nu(dx) < inf");
  }
  const double m1 = measure.first_moment();
  const ItoTerms tm = ItoEngine(k, measure, EtaTest::zero(), g).terms(T);
  PathFunctional y{"ito1-remainder", required_window(k, T), [k, g, T, m1](const JumpPath& p) {
                     return std::complex<double>(ito1_pathwise_remainder(k, p, g, T, m1));
                   }};
  const auto est = stransform_shifted({y}, EtaTest::zero(), measure, cfg);
  return make_residual("ito1[" + k.name() + "," + g.id() + "]", "zero", est[0].value.real(),
                       tm.memory_full, est[0].std_error, abs_tol, sigmas);
}

IdentityResidual telescoping_check(const VolterraKernel& k, const JumpMeasure& measure,
                                   const GaussianG& g, double T, const EnsembleConfig& cfg,
                                   double tol) {
  if (!(measure.abs_moment(1) < kInf)) {
    throw PreconditionError("Itô formula I needs ∫|x| nu(dx) < inf");
  }
  const double m1 = measure.first_moment();
  const Interval win = required_window(k, T);
  double worst = 0.0;
  for (std::uint64_t i = 0; i < cfg.paths; ++i) {
    const JumpPath p = simulate_path(measure, win, {cfg.seed, cfg.family, i, 0});
    worst = std::max(worst, std::abs(ito1_pathwise_remainder(k, p, g, T, m1)));
  }
  return make_residual("ito1-telescoping[" + k.name() + "," + g.id() + "]", "zero", worst, 0.0,
                       0.0, tol, 0.0);
}

}  // namespace clevy
