#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clevy/eta.hpp"
#include "clevy/ito_verify.hpp"
#include "clevy/kernels.hpp"
#include "clevy/levy.hpp"
#include "clevy/tolerances.hpp"

namespace clevy {

struct NamedKernel {
  std::string key;  // section name in the config
  VolterraKernel kernel;
};

// A verification scenario as read from an INI-style config file.  See
// README.md for the schema.
struct Scenario {
  std::string id = "unnamed";
  std::uint64_t seed = 42;
  std::size_t paths = 100000;
  std::size_t chunks = 64;
  double horizon = 1.0;
  std::size_t grid_points = 21;
  int moment_order = 4;
  std::vector<std::string> suites{"all"};

  JumpMeasure measure;
  std::vector<NamedKernel> kernels;
  std::vector<EtaTest> etas;
  GaussianG g;
  Tolerances tol;

  std::vector<double> u_values{0.5, 1.0, 2.0};
  std::vector<double> t_values{0.5, 1.0, 2.0};
  std::vector<double> frac_orders{0.1, 0.25, 0.4};
  double frac_cutoff = 20.0;
  std::size_t route_paths = 100;
  std::size_t wiener_paths = 100;
  std::size_t telescoping_paths = 1000;
};

// Throws ConfigError with a message naming the offending key.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Suite names accepted by the harness (without "all").
const std::vector<std::string>& suite_names();

}  // namespace clevy
