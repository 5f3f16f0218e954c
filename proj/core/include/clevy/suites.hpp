#pragma once

#include <string>
#include <vector>

#include "clevy/report.hpp"
#include "clevy/scenario.hpp"

namespace clevy {

struct SuiteOutput {
  std::vector<VerificationRow> rows;
  std::vector<Table> tables;  // CSV artifacts, including the suite's residual table
};

// Runs one named suite (see suite_names()).  Throws ConfigError /
// PreconditionError when the scenario cannot support the suite.
SuiteOutput run_suite(const std::string& name, const Scenario& sc);

struct ScenarioRun {
  std::vector<VerificationRow> rows;
  std::vector<Table> tables;
  Summary summary;
};

// Expands "all" and runs the suites in canonical order.
ScenarioRun run_scenario(const Scenario& sc, const std::vector<std::string>& suites);

// One jump path (s, x) and M on the scenario grid for every kernel.
std::vector<Table> simulation_dumps(const Scenario& sc);

}  // namespace clevy
