#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include "json.hpp"

#include "clevy/errors.hpp"
#include "clevy/report.hpp"
#include "clevy/scenario.hpp"
#include "clevy/suites.hpp"

using namespace clevy;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[scenario]
id = unit
paths = 2000
horizon = 1

[measure]
atoms = 1:2, -1:0.5

[kernels]
names = ou

[kernel.ou]
kind = ou
kappa = 0.5
t_star = 2
)";

std::string with(const std::string& extra) { return std::string(kMinimal) + extra; }

VerificationRow row(const std::string& group, bool pass) {
  VerificationRow v;
  v.suite = "simulate";
  v.group = group;
  v.r = make_residual(group + "[x]", "zero", 1.0, pass ? 1.0 : 2.0, 0.0, 0.5, 4.0);
  return v;
}

}  // namespace

TEST(Harness, ParsesMinimalScenario) {
  const Scenario sc = parse_scenario(kMinimal);
  EXPECT_EQ(sc.id, "unit");
  EXPECT_EQ(sc.paths, 2000u);
  ASSERT_EQ(sc.kernels.size(), 1u);
  EXPECT_EQ(sc.kernels[0].key, "ou");
  EXPECT_EQ(sc.kernels[0].kernel.kind(), KernelKind::OrnsteinUhlenbeck);
  EXPECT_EQ(sc.measure.atoms().size(), 2u);
  EXPECT_DOUBLE_EQ(sc.tol.mc_sigmas, 4.0);
}

TEST(Harness, RejectsBadConfigs) {
  EXPECT_THROW(parse_scenario(with("[scenario]\npathz = 3\n")), ConfigError);
  EXPECT_THROW(parse_scenario(with("[bogus]\nx = 1\n")), ConfigError);
  EXPECT_THROW(parse_scenario("[scenario]\nid = x\n"), ConfigError);
  EXPECT_THROW(parse_scenario(with("[kernel.flp]\nkind = fractional\nd = 0.25\n")), ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.cfg"), ConfigError);
  std::string bad_atoms = kMinimal;
  bad_atoms.replace(bad_atoms.find("1:2, -1:0.5"), 11, "1:-2");
  EXPECT_THROW(parse_scenario(bad_atoms), ConfigError);
  std::string short_kernel = kMinimal;
  short_kernel.replace(short_kernel.find("t_star = 2"), 10, "t_star = 0.5");
  EXPECT_THROW(parse_scenario(short_kernel), ConfigError);
}

TEST(Harness, ShippedScenariosLoad) {
  for (const char* name : {"scenA.cfg", "scenB.cfg", "scenC.cfg", "scenD.cfg",
                           "infinite_first_moment.cfg"}) {
    EXPECT_NO_THROW(load_scenario(std::string(CLEVY_SCENARIO_DIR) + "/" + name)) << name;
  }
}

TEST(Harness, InfiniteFirstMomentGatesItoOne) {
  const Scenario sc =
      load_scenario(std::string(CLEVY_SCENARIO_DIR) + "/infinite_first_moment.cfg");
  EXPECT_THROW(run_suite("ito1", sc), PreconditionError);
}

TEST(Harness, CsvQuotingAndEmptyTables) {
  Table t{"t", {"a", "b"}, {{"plain", "with,comma"}, {"say \"hi\"", "x"}}};
  EXPECT_EQ(csv_text(t), "a,b\nplain,\"with,comma\"\n\"say \"\"hi\"\"\",x\n");
  Table empty{"e", {"a", "b"}, {}};
  EXPECT_EQ(csv_text(empty), "a,b\n");
}

TEST(Harness, CsvRoundTrip) {
  const fs::path dir = fs::temp_directory_path() / "clevy_unit_csv";
  prepare_output_dir(dir);
  Table t{"round", {"x", "y"}, {{"1", "a,b"}, {"2", "\"q\""}}};
  write_table(t, dir, ReportFormat::Csv);
  const Table back = read_csv(dir / "round.csv");
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_EQ(back.rows, t.rows);
  fs::remove_all(dir);
}

TEST(Harness, JsonTable) {
  Table t{"j", {"x", "y"}, {{"1", "a"}}};
  const auto doc = nlohmann::json::parse(json_text(t));
  EXPECT_EQ(doc["table"], "j");
  EXPECT_EQ(doc["rows"][0]["y"], "a");
}

TEST(Harness, NumberFormattingRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 12345678.9}) {
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
}

TEST(Harness, SummaryCountsGroupsAndFailures) {
  const Summary s = summarize("unit", 1, 10, {row("a", true), row("a", false), row("b", true)});
  EXPECT_EQ(s.groups.size(), 2u);
  EXPECT_EQ(s.passed(), 2u);
  EXPECT_EQ(s.failed(), 1u);
  EXPECT_FALSE(s.pass());
  EXPECT_NE(summary_text(s).find("RESULT FAIL"), std::string::npos);
  const auto j = nlohmann::json::parse(summary_json(s));
  EXPECT_EQ(j["checks_failed"], 1);
  EXPECT_EQ(j["result"], "FAIL");
}

TEST(Harness, ResidualTableColumns) {
  const Table t = residual_table("simulate", {row("a", true)});
  EXPECT_EQ(t.columns.front(), "identity_id");
  EXPECT_EQ(t.columns.back(), "pass");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].back(), "PASS");
}

TEST(Harness, UnwritableOutputDirectory) {
  const fs::path file = fs::temp_directory_path() / "clevy_unit_plain_file";
  std::ofstream(file) << "x";
  EXPECT_THROW(prepare_output_dir(file / "sub"), ConfigError);
  fs::remove(file);
}

TEST(Harness, SimulateSuiteIsDeterministic) {
  Scenario sc = parse_scenario(kMinimal);
  sc.route_paths = 5;
  const ScenarioRun a = run_scenario(sc, {"simulate"});
  const ScenarioRun b = run_scenario(sc, {"simulate"});
  ASSERT_EQ(a.tables.size(), b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) {
    EXPECT_EQ(csv_text(a.tables[i]), csv_text(b.tables[i]));
  }
  EXPECT_TRUE(a.summary.pass()) << summary_text(a.summary);
}

TEST(Harness, SimulationDumps) {
  const auto tables = simulation_dumps(parse_scenario(kMinimal));
  ASSERT_EQ(tables.size(), 2u);
  EXPECT_EQ(tables[0].name, "paths");
  EXPECT_EQ(tables[1].name, "path_M_ou");
  EXPECT_EQ(tables[1].rows.size(), 21u);
}
