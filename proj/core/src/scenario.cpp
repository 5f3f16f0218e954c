#include "clevy/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "clevy/errors.hpp"

namespace clevy {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& fixed_sections() {
  static const std::map<std::string, std::set<std::string>> s{
      {"scenario",
       {"id", "seed", "paths", "chunks", "horizon", "grid_points", "moment_order", "suites"}},
      {"measure", {"atoms", "ts_c", "ts_g", "ts_m", "ts_y", "epsilon"}},
      {"kernels", {"names"}},
      {"eta", {"even_c", "even_w", "odd_c", "odd_w"}},
      {"g", {"kind", "sigma"}},
      {"checks",
       {"u", "t", "frac_orders", "frac_cutoff", "route_paths", "wiener_paths",
        "telescoping_paths"}},
      {"tolerances",
       {"mc_sigmas", "route", "jump_relation", "frac_identity", "frac_parts", "wiener",
        "derivative", "ito2_rel", "rearrangement", "telescoping", "quad_rel"}},
  };
  return s;
}

const std::set<std::string>& kernel_keys() {
  static const std::set<std::string> s{"kind", "kappa", "t_star", "coeffs", "d", "past_cutoff"};
  return s;
}

class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  bool has(const std::string& key) const {
    return tree_ != nullptr && tree_->find(key) != tree_->not_found();
  }

  std::string raw(const std::string& key) const {
    const auto it = tree_->find(key);
    return boost::trim_copy(it->second.data());
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? to_double(raw(key), key) : fallback;
  }

  double required_number(const std::string& key) const {
    if (!has(key)) fail(key, "missing");
    return to_double(raw(key), key);
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const std::string s = raw(key);
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      fail(key, "not a non-negative integer: '" + s + "'");
    }
    if (pos != s.size() || s.starts_with('-')) fail(key, "not a non-negative integer: '" + s + "'");
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

  std::vector<std::string> words(const std::string& key) const {
    std::vector<std::string> out;
    if (!has(key)) return out;
    std::vector<std::string> parts;
    boost::split(parts, raw(key), boost::is_any_of(", \t"), boost::token_compress_on);
    for (auto& p : parts) {
      if (!p.empty()) out.push_back(p);
    }
    return out;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& w : words(key)) out.push_back(to_double(w, key));
    if (out.empty()) fail(key, "empty list");
    return out;
  }

  void check_keys(const std::set<std::string>& allowed) const {
    if (tree_ == nullptr) return;
    for (const auto& [k, v] : *tree_) {
      if (!allowed.contains(k)) fail(k, "unknown key");
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError("[" + name_ + "] " + key + ": " + what);
  }

 private:
  double to_double(const std::string& s, const std::string& key) const {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      fail(key, "not a number: '" + s + "'");
    }
    if (pos != s.size()) fail(key, "not a number: '" + s + "'");
    if (!std::isfinite(v)) fail(key, "must be finite");
    return v;
  }

  std::string name_;
  const pt::ptree* tree_;
};

Section section(const pt::ptree& root, const std::string& name) {
  const auto it = root.find(name);
  return {name, it == root.not_found() ? nullptr : &it->second};
}

double positive(const Section& s, const std::string& key, double fallback) {
  const double v = s.number(key, fallback);
  if (!(v > 0.0)) s.fail(key, "must be positive");
  return v;
}

JumpMeasure parse_measure(const Section& s) {
  std::vector<Atom> atoms;
  for (const auto& w : s.words("atoms")) {
    const auto colon = w.find(':');
    if (colon == std::string::npos) s.fail("atoms", "expected size:rate, got '" + w + "'");
    Atom a;
    try {
      std::size_t p1 = 0, p2 = 0;
      const std::string sz = w.substr(0, colon), rt = w.substr(colon + 1);
      a.size = std::stod(sz, &p1);
      a.rate = std::stod(rt, &p2);
      if (p1 != sz.size() || p2 != rt.size()) throw std::invalid_argument(w);
    } catch (const std::exception&) {
      s.fail("atoms", "expected size:rate, got '" + w + "'");
    }
    atoms.push_back(a);
  }
  const bool density = s.has("ts_c") || s.has("ts_g") || s.has("ts_m") || s.has("ts_y");
  try {
    if (!density) {
      if (atoms.empty()) s.fail("atoms", "no jumps declared");
      return JumpMeasure::from_atoms(std::move(atoms));
    }
    TemperedStableDensity d;
    d.c = s.required_number("ts_c");
    d.g = s.required_number("ts_g");
    d.m = s.required_number("ts_m");
    d.y = s.required_number("ts_y");
    return JumpMeasure::with_density(d, s.number("epsilon", 0.0), std::move(atoms));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("[measure] ") + e.what());
  }
}

VolterraKernel parse_kernel(const Section& s) {
  s.check_keys(kernel_keys());
  const std::string kind = s.text("kind", "");
  try {
    if (kind == "ou") {
      return VolterraKernel::ornstein_uhlenbeck(positive(s, "kappa", 0.5),
                                                positive(s, "t_star", 2.0));
    }
    if (kind == "shot_noise") {
      const auto c = s.numbers("coeffs", {0.0, 1.0});
      return VolterraKernel::shot_noise(c, positive(s, "t_star", 2.0));
    }
    if (kind == "indicator") return VolterraKernel::indicator(positive(s, "t_star", 2.0));
    if (kind == "fractional") {
      return VolterraKernel::fractional(s.required_number("d"), positive(s, "past_cutoff", 20.0));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    s.fail("kind", e.what());
  }
  s.fail("kind", "expected ou | shot_noise | indicator | fractional, got '" + kind + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"simulate", "stransform", "skorokhod",
                                              "frac",     "ito1",       "ito2"};
  return names;
}

Scenario parse_scenario(const std::string& text) {
  pt::ptree root;
  try {
    std::istringstream in(text);
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }

  Scenario sc;
  const Section kernels_sec = section(root, "kernels");
  const auto kernel_names = kernels_sec.words("names");
  for (const auto& [name, child] : root) {
    if (fixed_sections().contains(name)) continue;
    if (name.starts_with("kernel.")) {
      const std::string key = name.substr(7);
      if (std::find(kernel_names.begin(), kernel_names.end(), key) == kernel_names.end()) {
        throw ConfigError("[" + name + "] is not listed in [kernels] names");
      }
      continue;
    }
    if (!child.data().empty() && child.empty()) {
      throw ConfigError("key '" + name + "' outside any section");
    }
    throw ConfigError("unknown section [" + name + "]");
  }
  for (const auto& [name, keys] : fixed_sections()) section(root, name).check_keys(keys);

  const Section s = section(root, "scenario");
  sc.id = s.text("id", sc.id);
  sc.seed = s.count("seed", sc.seed);
  sc.paths = s.count("paths", sc.paths);
  sc.chunks = s.count("chunks", sc.chunks);
  if (sc.paths < 2) s.fail("paths", "need at least 2 paths");
  if (sc.chunks == 0) s.fail("chunks", "must be positive");
  sc.horizon = positive(s, "horizon", sc.horizon);
  sc.grid_points = s.count("grid_points", sc.grid_points);
  if (sc.grid_points < 2) s.fail("grid_points", "need at least 2 points");
  sc.moment_order = static_cast<int>(s.count("moment_order", 4));
  if (s.has("suites")) {
    sc.suites = s.words("suites");
    for (const auto& name : sc.suites) {
      if (name != "all" &&
          std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
        s.fail("suites", "unknown suite '" + name + "'");
      }
    }
  }

  const auto msec = root.find("measure");
  if (msec == root.not_found()) throw ConfigError("missing [measure] section");
  sc.measure = parse_measure(section(root, "measure"));
  sc.measure.check_moments(sc.moment_order);

  if (kernel_names.empty()) kernels_sec.fail("names", "no kernels listed");
  for (const auto& key : kernel_names) {
    const auto it = root.find("kernel." + key);
    if (it == root.not_found()) {
      throw ConfigError("[kernels] names: no section [kernel." + key + "]");
    }
    sc.kernels.push_back({key, parse_kernel(Section("kernel." + key, &it->second))});
    if (sc.kernels.back().kernel.t_upper() < sc.horizon) {
      throw ConfigError("[kernel." + key + "] t_star is below the scenario horizon");
    }
  }

  const Section e = section(root, "eta");
  try {
    for (double c : e.numbers("even_c", {0.5, 1.0, 2.0})) {
      sc.etas.push_back(EtaTest::builtin(c, positive(e, "even_w", 1.0), EtaFlavor::Even));
    }
    for (double c : e.numbers("odd_c", {0.5, 1.0, 2.0})) {
      sc.etas.push_back(EtaTest::builtin(c, positive(e, "odd_w", 0.5), EtaFlavor::Odd));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw ConfigError(std::string("[eta] ") + err.what());
  }

  const Section g = section(root, "g");
  if (g.text("kind", "gaussian") != "gaussian") g.fail("kind", "only 'gaussian' is supported");
  sc.g.sigma = positive(g, "sigma", 1.0);

  const Section c = section(root, "checks");
  sc.u_values = c.numbers("u", sc.u_values);
  sc.t_values = c.numbers("t", sc.t_values);
  for (double t : sc.t_values) {
    if (!(t > 0.0)) c.fail("t", "times must be positive");
  }
  sc.frac_orders = c.numbers("frac_orders", sc.frac_orders);
  for (double d : sc.frac_orders) {
    if (!(d > 0.0 && d < 0.5)) c.fail("frac_orders", "orders must lie in (0, 1/2)");
  }
  sc.frac_cutoff = positive(c, "frac_cutoff", sc.frac_cutoff);
  sc.route_paths = c.count("route_paths", sc.route_paths);
  sc.wiener_paths = c.count("wiener_paths", sc.wiener_paths);
  sc.telescoping_paths = c.count("telescoping_paths", sc.telescoping_paths);

  const Section t = section(root, "tolerances");
  Tolerances& tol = sc.tol;
  tol.mc_sigmas = positive(t, "mc_sigmas", tol.mc_sigmas);
  tol.route = positive(t, "route", tol.route);
  tol.jump_relation = positive(t, "jump_relation", tol.jump_relation);
  tol.frac_identity = positive(t, "frac_identity", tol.frac_identity);
  tol.frac_parts = positive(t, "frac_parts", tol.frac_parts);
  tol.wiener = positive(t, "wiener", tol.wiener);
  tol.derivative = positive(t, "derivative", tol.derivative);
  tol.ito2_rel = positive(t, "ito2_rel", tol.ito2_rel);
  tol.rearrangement = positive(t, "rearrangement", tol.rearrangement);
  tol.telescoping = positive(t, "telescoping", tol.telescoping);
  tol.quad_rel = positive(t, "quad_rel", tol.quad_rel);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace clevy
