#include "clevy/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "clevy/conv_process.hpp"
#include "clevy/errors.hpp"
#include "clevy/frac_ops.hpp"
#include "clevy/ito_verify.hpp"
#include "clevy/skorokhod.hpp"
#include "clevy/stransform.hpp"

namespace clevy {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

EnsembleConfig ensemble(const Scenario& sc, const std::string& label, std::size_t paths = 0) {
  EnsembleConfig cfg;
  cfg.paths = paths ? paths : sc.paths;
  cfg.seed = sc.seed;
  cfg.family = family_id(sc.id + "/" + label);
  cfg.chunks = sc.chunks;
  return cfg;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = b;
  return out;
}

bool h1_to_h4(const VolterraKernel& k) { return k.flags().all(); }
bool is_fractional(const VolterraKernel& k) { return k.kind() == KernelKind::Fractional; }

class Collector {
 public:
  Collector(std::string suite, double sigmas) : suite_(std::move(suite)), sigmas_(sigmas) {}

  void add(const std::string& group, const std::string& kernel, IdentityResidual r) {
    rows.push_back({suite_, group, kernel, std::move(r)});
  }

  // Real and imaginary parts as two rows, each against its own standard error.
  void add_complex(const std::string& group, const std::string& kernel, const std::string& id,
                   const std::string& eta_id, std::complex<double> lhs, std::complex<double> rhs,
                   double se_re, double se_im, double abs_tol = 0.0) {
    add(group, kernel, make_residual(id + ".re", eta_id, lhs.real(), rhs.real(), se_re, abs_tol,
                                     sigmas_));
    add(group, kernel, make_residual(id + ".im", eta_id, lhs.imag(), rhs.imag(), se_im, abs_tol,
                                     sigmas_));
  }

  double sigmas() const { return sigmas_; }

  std::vector<VerificationRow> rows;

 private:
  std::string suite_;
  double sigmas_;
};

SuiteOutput finish(Collector& c, const std::string& name, std::vector<Table> extra = {}) {
  SuiteOutput out;
  out.tables.push_back(residual_table(name, c.rows));
  for (auto& t : extra) out.tables.push_back(std::move(t));
  out.rows = std::move(c.rows);
  return out;
}

SuiteOutput finish_formulas(Collector& c, const std::string& name, const Scenario& sc) {
  SuiteOutput out;
  out.tables.push_back(formula_table(name, c.rows, sc.measure.describe(), sc.g.id()));
  out.rows = std::move(c.rows);
  return out;
}

// ---------------------------------------------------------------- simulate

SuiteOutput suite_simulate(const Scenario& sc) {
  Collector c("simulate", sc.tol.mc_sigmas);
  const double T = sc.horizon;

  {
    const double tmax = *std::max_element(sc.t_values.begin(), sc.t_values.end());
    const std::size_t nu = sc.u_values.size();
    const std::size_t nt = sc.t_values.size();
    const EnsembleConfig cfg = ensemble(sc, "levy-khintchine");
    const auto stats = run_ensemble(cfg, 2 * nu * nt, [&](std::uint64_t i, std::span<double> q) {
      const JumpPath p = simulate_path(sc.measure, {0.0, tmax}, {cfg.seed, cfg.family, i, 0});
      for (std::size_t a = 0; a < nt; ++a) {
        const double l = p.levy(sc.t_values[a]);
        for (std::size_t b = 0; b < nu; ++b) {
          q[2 * (a * nu + b)] = std::cos(sc.u_values[b] * l);
          q[2 * (a * nu + b) + 1] = std::sin(sc.u_values[b] * l);
        }
      }
    });
    for (std::size_t a = 0; a < nt; ++a) {
      for (std::size_t b = 0; b < nu; ++b) {
        const double t = sc.t_values[a], u = sc.u_values[b];
        const auto& re = stats[2 * (a * nu + b)];
        const auto& im = stats[2 * (a * nu + b) + 1];
        c.add_complex("levy-khintchine", "",
                      "levy-khintchine[u=" + num(u) + ",t=" + num(t) + "]", "none",
                      {re.mean(), im.mean()}, std::exp(t * char_exponent(sc.measure, u)),
                      re.stderr_of_mean(), im.stderr_of_mean());
      }
    }
  }

  for (const auto& [key, k] : sc.kernels) {
    const std::size_t nu = sc.u_values.size();
    const Interval win = required_window(k, T);
    const EnsembleConfig cfg = ensemble(sc, "moments/" + key);
    const auto stats = run_ensemble(cfg, 1 + 2 * nu, [&](std::uint64_t i, std::span<double> q) {
      const JumpPath p = simulate_path(sc.measure, win, {cfg.seed, cfg.family, i, 0});
      const double m = conv_value_direct(k, p, T);
      q[0] = m * m;
      for (std::size_t b = 0; b < nu; ++b) {
        q[1 + 2 * b] = std::cos(sc.u_values[b] * m);
        q[2 + 2 * b] = std::sin(sc.u_values[b] * m);
      }
    });
    c.add("isometry", key,
          make_residual("isometry[" + key + ",t=" + num(T) + "]", "none", stats[0].mean(),
                        conv_variance_analytic(k, sc.measure, T), stats[0].stderr_of_mean(), 0.0,
                        c.sigmas()));
    for (std::size_t b = 0; b < nu; ++b) {
      const double u = sc.u_values[b];
      c.add_complex("charfn-M", key, "charfn-M[" + key + ",u=" + num(u) + ",t=" + num(T) + "]",
                    "none", {stats[1 + 2 * b].mean(), stats[2 + 2 * b].mean()},
                    conv_charfn_analytic(k, sc.measure, T, u), stats[1 + 2 * b].stderr_of_mean(),
                    stats[2 + 2 * b].stderr_of_mean());
    }
  }

  const auto grid = linspace(0.0, T, sc.grid_points);
  for (const auto& [key, k] : sc.kernels) {
    if (!h1_to_h4(k)) continue;
    const Interval win = required_window(k, T);
    const EnsembleConfig cfg = ensemble(sc, "routes/" + key);
    double route = 0.0, jump = 0.0;
    for (std::uint64_t i = 0; i < sc.route_paths; ++i) {
      const JumpPath p = simulate_path(sc.measure, win, {cfg.seed, cfg.family, i, 0});
      const ConvPath a = conv_path_direct(k, p, grid);
      const ConvPath b = conv_path_by_parts(k, p, grid);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        route = std::max(route, std::abs(a.values[j] - b.values[j]));
      }
      jump = std::max(jump, check_jump_relation(k, p, T).max_error);
    }
    c.add("route-equivalence", key,
          make_residual("route-equivalence[" + key + "]", "none", route, 0.0, 0.0, sc.tol.route,
                        c.sigmas()));
    c.add("jump-relation", key,
          make_residual("jump-relation[" + key + "]", "none", jump, 0.0, 0.0,
                        sc.tol.jump_relation, c.sigmas()));
  }

  return finish(c, "simulate", simulation_dumps(sc));
}

// -------------------------------------------------------------- stransform

PathFunctional constant_one(const Interval& window) {
  return {"1", window, [](const JumpPath&) { return std::complex<double>(1.0); }};
}

SuiteOutput suite_stransform(const Scenario& sc) {
  Collector c("stransform", sc.tol.mc_sigmas);
  Table est{"stransform_estimates", {"quantity", "eta_id", "method", "value", "stderr", "n"}, {}};
  auto record = [&](const std::string& q, const std::string& eta, SMethod m, double v, double se,
                    std::size_t n) {
    est.rows.push_back(
        {q, eta, to_string(m), format_number(v), format_number(se), std::to_string(n)});
  };
  const double T = sc.horizon;

  for (std::size_t a = 0; a < sc.etas.size(); ++a) {
    const EtaTest& ea = sc.etas[a];
    std::vector<PathFunctional> xs{constant_one(ea.time_support())};
    for (std::size_t b = a + 1; b < sc.etas.size(); ++b) {
      xs.push_back(functional_wick(sc.etas[b], sc.measure));
    }
    const auto r = stransform_reweight(xs, ea, sc.measure, ensemble(sc, "wick/" + ea.id()));
    c.add("wick-mean", "",
          make_residual("wick-mean", ea.id(), r[0].value.real(), 1.0, r[0].std_error_re, 0.0,
                        c.sigmas()));
    for (std::size_t b = a + 1; b < sc.etas.size(); ++b) {
      const EtaTest& eb = sc.etas[b];
      const auto& e = r[b - a];
      c.add("wick-pairing", "",
            make_residual("wick-pairing[" + eb.id() + "]", ea.id(), e.value.real(),
                          std::exp(eta_pairing(ea, eb, sc.measure)), e.std_error_re, 0.0,
                          c.sigmas()));
    }
  }

  for (const auto& [key, k] : sc.kernels) {
    std::vector<PathFunctional> xs{functional_M(k, T)};
    for (double u : sc.u_values) xs.push_back(functional_exp_iuM(k, T, u));
    for (const EtaTest& eta : sc.etas) {
      const std::string label = key + "/" + eta.id();
      const auto rw = stransform_reweight(xs, eta, sc.measure, ensemble(sc, "reweight/" + label));
      const auto sh = stransform_shifted(xs, eta, sc.measure, ensemble(sc, "shifted/" + label));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const bool real = i == 0;
        const std::complex<double> exact =
            real ? std::complex<double>(s_of_M_analytic(k, sc.measure, T, eta))
                 : s_charfn_analytic(k, sc.measure, T, sc.u_values[i - 1], eta);
        const std::string q = (real ? "M" : "exp(iuM)[u=" + num(sc.u_values[i - 1]) + "]") +
                              "[" + key + ",t=" + num(T) + "]";
        for (const auto* e : {&rw[i], &sh[i]}) {
          record(q + (real ? "" : ".re"), eta.id(), e->method, e->value.real(), e->std_error_re,
                 e->n);
          if (!real) {
            record(q + ".im", eta.id(), e->method, e->value.imag(), e->std_error_im, e->n);
          }
        }
        record(q + (real ? "" : ".re"), eta.id(), SMethod::Analytic, exact.real(), 0.0, 0);
        if (!real) record(q + ".im", eta.id(), SMethod::Analytic, exact.imag(), 0.0, 0);

        const std::string id = "s-routes[" + q;
        const double cre = std::hypot(rw[i].std_error_re, sh[i].std_error_re);
        const double cim = std::hypot(rw[i].std_error_im, sh[i].std_error_im);
        if (real) {
          c.add("s-routes", key, make_residual(id + ",reweight-analytic]", eta.id(),
                                               rw[i].value.real(), exact.real(),
                                               rw[i].std_error_re, 0.0, c.sigmas()));
          c.add("s-routes", key, make_residual(id + ",shifted-analytic]", eta.id(),
                                               sh[i].value.real(), exact.real(),
                                               sh[i].std_error_re, 0.0, c.sigmas()));
          c.add("s-routes", key, make_residual(id + ",reweight-shifted]", eta.id(),
                                               rw[i].value.real(), sh[i].value.real(), cre, 0.0,
                                               c.sigmas()));
        } else {
          c.add_complex("s-routes", key, id + ",reweight-analytic]", eta.id(), rw[i].value, exact,
                        rw[i].std_error_re, rw[i].std_error_im);
          c.add_complex("s-routes", key, id + ",shifted-analytic]", eta.id(), sh[i].value, exact,
                        sh[i].std_error_re, sh[i].std_error_im);
          c.add_complex("s-routes", key, id + ",reweight-shifted]", eta.id(), rw[i].value,
                        sh[i].value, cre, cim);
        }
      }
    }
  }

  if (sc.measure.abs_moment(1) < kInf) {
    for (PredictableIntegrand x : {PredictableIntegrand::Jump, PredictableIntegrand::JumpTimesLevy}) {
      for (const EtaTest& eta : sc.etas) {
        c.add("ito-integral", "",
              ito_integral_stransform_check(
                  x, sc.measure, T, eta,
                  ensemble(sc, std::string("ito-integral/") + to_string(x) + "/" + eta.id()),
                  c.sigmas()));
      }
    }
  }

  if (!sc.measure.density() && !sc.measure.atoms().empty()) {
    const EtaTest f = EtaTest::field(0.5, 1.0, EtaFlavor::Even);
    const std::vector<double> set{sc.measure.atoms().front().size};
    for (const EtaTest& eta : sc.etas) {
      c.add("simple-field", "",
            simple_field_identity_check(f, set, 0.0, T, eta, sc.measure,
                                        ensemble(sc, "simple-field/" + eta.id()), c.sigmas()));
    }
  }

  return finish(c, "stransform", {std::move(est)});
}

// --------------------------------------------------------------- skorokhod

SuiteOutput suite_skorokhod(const Scenario& sc) {
  Collector c("skorokhod", sc.tol.mc_sigmas);
  const double T = sc.horizon;
  const double a = 0.5 * T;

  std::vector<PathFunctional> quads;
  for (const auto& nk : sc.kernels) {
    quads.push_back(functional_skorokhod_quadratic(nk.kernel, T));
    quads.back().name = "2*int M dM°[" + nk.key + "]";
  }
  const auto zero = zero_expectation_suite(quads, sc.measure, ensemble(sc, "zero-mean"), c.sigmas());
  for (std::size_t i = 0; i < zero.size(); ++i) c.add("zero-mean", sc.kernels[i].key, zero[i]);

  for (const auto& [key, k] : sc.kernels) {
    for (const EtaTest& eta : sc.etas) {
      const std::string label = key + "/" + eta.id();
      IdentityResidual q = quadratic_stransform_check(k, sc.measure, T, eta,
                                                      ensemble(sc, "quadratic/" + label),
                                                      c.sigmas());
      q.identity += "[" + key + "]";
      c.add("quadratic", key, q);
      IdentityResidual inc = increment_check(k, sc.measure, a, T, eta,
                                             ensemble(sc, "increment/" + label), c.sigmas());
      inc.identity += "[" + key + "]";
      c.add("increment", key, inc);
      MemoryCorrectionReport mc = memory_correction_check(
          k, sc.measure, a, T, eta, ensemble(sc, "memory/" + label), c.sigmas());
      mc.product_rule.identity += "[" + key + "]";
      mc.correction_mean.identity += "[" + key + "]";
      c.add("memory-product-rule", key, mc.product_rule);
      c.add("memory-correction", key, mc.correction_mean);
    }
  }
  return finish(c, "skorokhod");
}

// -------------------------------------------------------------------- frac

SuiteOutput suite_frac(const Scenario& sc) {
  Collector c("frac", sc.tol.mc_sigmas);
  const double T = sc.horizon;
  quad::Options opts;
  opts.rel_tol = sc.tol.quad_rel;

  const SampledFunction bump = SampledFunction::closed_form(
      [](double x) { return std::abs(x) < 1.0 ? 1.0 - x * x : 0.0; }, {-1.0, 1.0});
  const SampledFunction box = SampledFunction::indicator(0.0, 1.5);
  const SampledFunction decay = SampledFunction::closed_form(
      [T](double x) { return x >= 0.0 && x <= T ? std::exp(-x) : 0.0; }, {0.0, T});
  const SampledFunction window = SampledFunction::indicator(0.0, T);

  for (double d : sc.frac_orders) {
    const VolterraKernel k = VolterraKernel::fractional(d, sc.frac_cutoff);
    const std::string key = k.name();

    for (double t : sc.t_values) {
      const SampledFunction chi = SampledFunction::indicator(0.0, t);
      double worst = 0.0;
      for (double s : linspace(-std::min(sc.frac_cutoff, 5.0), t + 0.5, 111)) {
        worst = std::max(worst, std::abs(frac_int_minus(chi, d, s, opts) - k.eval(t, s)));
      }
      c.add("frac-kernel-identity", key,
            make_residual("frac-kernel-identity[d=" + num(d) + ",t=" + num(t) + "]", "none", worst,
                          0.0, 0.0, sc.tol.frac_identity, c.sigmas()));
    }

    for (const auto& [name, g, h] : {std::tuple{"bump,box", bump, box}, {"box,bump", box, bump}}) {
      const FracPartsResult r = frac_parts_check(g, h, d);
      c.add("frac-parts", key,
            make_residual(std::string("frac-parts[d=") + num(d) + "," + name + "]", "none", r.lhs,
                          r.rhs, 0.0, sc.tol.frac_parts, c.sigmas()));
    }

    const Interval win = required_window(k, T);
    const EnsembleConfig cfg = ensemble(sc, "wiener/" + key);
    for (const auto& [name, g] : {std::pair{"indicator", window}, {"exp", decay}}) {
      double worst = 0.0;
      WienerPair at_worst;
      for (std::uint64_t i = 0; i < sc.wiener_paths; ++i) {
        const JumpPath p = simulate_path(sc.measure, win, {cfg.seed, cfg.family, i, 0});
        const WienerPair w = wiener_type_equiv(g, k, p);
        if (std::abs(w.lhs - w.rhs) >= worst) {
          worst = std::abs(w.lhs - w.rhs);
          at_worst = w;
        }
      }
      c.add("wiener", key,
            make_residual(std::string("wiener[d=") + num(d) + ",g=" + name + "]", "none",
                          at_worst.lhs, at_worst.rhs, 0.0, sc.tol.wiener, c.sigmas()));
    }
  }
  return finish(c, "frac");
}

// -------------------------------------------------------------------- ito1

SuiteOutput suite_ito1(const Scenario& sc) {
  if (!(sc.measure.abs_moment(1) < kInf)) {
    throw PreconditionError(
        "ito1: Itô formula I needs ∫|x| nu(dx) < inf, but the measure " + sc.measure.describe() +
        " has infinite first absolute moment");
  }
  Collector c("ito1", sc.tol.mc_sigmas);
  const double T = sc.horizon;
  for (const auto& [key, k] : sc.kernels) {
    if (!h1_to_h4(k)) continue;
    c.add("ito1", key,
          ito1_residual(k, sc.measure, sc.g, T, ensemble(sc, "ito1/" + key), c.sigmas(),
                        sc.tol.telescoping));
    if (k.kind() == KernelKind::Indicator) {
      c.add("ito1-telescoping", key,
            telescoping_check(k, sc.measure, sc.g, T,
                              ensemble(sc, "telescoping/" + key, sc.telescoping_paths),
                              sc.tol.telescoping));
    }
  }
  return finish_formulas(c, "ito1", sc);
}

// -------------------------------------------------------------------- ito2

SuiteOutput suite_ito2(const Scenario& sc) {
  Collector c("ito2", sc.tol.mc_sigmas);
  const double T = sc.horizon;
  const std::vector<double> ts{0.25 * T, 0.5 * T, 0.75 * T};
  for (const auto& [key, k] : sc.kernels) {
    if (!h1_to_h4(k) && !is_fractional(k)) continue;
    for (const EtaTest& eta : sc.etas) {
      const Ito2Report rep = ito2_residual(k, sc.measure, sc.g, T, eta,
                                           ensemble(sc, "ito2/" + key + "/" + eta.id()),
                                           sc.tol.ito2_rel, c.sigmas());
      c.add("ito2", key, rep.identity);
      c.add("ito2-jumps", key, rep.jump_mc);
      c.add("ito2-skorokhod", key, rep.remainder_mc);
      c.add("ito-derivative", key,
            derivative_consistency(k, sc.measure, sc.g, eta, ts, sc.tol.derivative));
      if (h1_to_h4(k)) {
        c.add("ito1-rearrangement", key,
              ito1_from_ito2_rearrangement_check(k, sc.measure, sc.g, T, eta,
                                                 sc.tol.rearrangement));
      }
    }
  }
  return finish_formulas(c, "ito2", sc);
}

}  // namespace

SuiteOutput run_suite(const std::string& name, const Scenario& sc) {
  if (name == "simulate") return suite_simulate(sc);
  if (name == "stransform") return suite_stransform(sc);
  if (name == "skorokhod") return suite_skorokhod(sc);
  if (name == "frac") return suite_frac(sc);
  if (name == "ito1") return suite_ito1(sc);
  if (name == "ito2") return suite_ito2(sc);
  throw ConfigError("unknown suite '" + name + "'");
}

ScenarioRun run_scenario(const Scenario& sc, const std::vector<std::string>& suites) {
  std::set<std::string> wanted;
  for (const auto& s : suites) {
    if (s == "all") {
      wanted.insert(suite_names().begin(), suite_names().end());
    } else if (std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end()) {
      wanted.insert(s);
    } else {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }
  ScenarioRun run;
  for (const auto& name : suite_names()) {
    if (!wanted.contains(name)) continue;
    SuiteOutput out = run_suite(name, sc);
    for (auto& r : out.rows) run.rows.push_back(std::move(r));
    for (auto& t : out.tables) run.tables.push_back(std::move(t));
  }
  run.summary = summarize(sc.id, sc.seed, sc.paths, run.rows);
  return run;
}

std::vector<Table> simulation_dumps(const Scenario& sc) {
  const double T = sc.horizon;
  Interval win{0.0, T};
  for (const auto& nk : sc.kernels) win = win.hull(required_window(nk.kernel, T));
  const EnsembleConfig cfg = ensemble(sc, "dump");
  const JumpPath p = simulate_path(sc.measure, win, {cfg.seed, cfg.family, 0, 0});

  std::vector<Table> out;
  Table jumps{"paths", {"s", "x"}, {}};
  for (const Jump& j : p.jumps()) jumps.rows.push_back({format_number(j.time), format_number(j.size)});
  out.push_back(std::move(jumps));

  const auto grid = linspace(0.0, T, sc.grid_points);
  for (const auto& [key, k] : sc.kernels) {
    const ConvPath m = conv_path_direct(k, p, grid);
    Table t{"path_M_" + key, {"t", "M"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      t.rows.push_back({format_number(m.grid[i]), format_number(m.values[i])});
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace clevy
