// clevy: scenario runner for the convoluted Lévy process verification suites.
//
//   clevy simulate --config scen.cfg [--seed N] [--n N] [--out DIR] [--format csv|json]
//   clevy verify   --config scen.cfg [--suite NAME]... [--seed N] [--n N] [--out DIR] [--format ...]
//   clevy report   --out DIR [--format csv|json]
//
// Exit codes: 0 all checks pass, 1 some check outside tolerance,
// 2 configuration / precondition / output errors, 3 numerical failure.

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "clevy/errors.hpp"
#include "clevy/report.hpp"
#include "clevy/scenario.hpp"
#include "clevy/suites.hpp"

namespace fs = std::filesystem;
using namespace clevy;

namespace {

struct Args {
  std::string config;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::string out = "clevy-out";
  std::string format = "csv";
};

ReportFormat parse_format(const std::string& f) {
  return f == "json" ? ReportFormat::Json : ReportFormat::Csv;
}

Scenario load(const Args& a) {
  Scenario sc = load_scenario(a.config);
  if (a.seed) sc.seed = *a.seed;
  if (a.n) {
    if (*a.n < 2) throw ConfigError("--n must be at least 2");
    sc.paths = *a.n;
  }
  return sc;
}

void write_summary(const Summary& s, const fs::path& dir, ReportFormat format) {
  if (format == ReportFormat::Json) {
    write_text(dir / "summary.json", summary_json(s));
  } else {
    write_text(dir / "summary.txt", summary_text(s));
  }
}

int cmd_simulate(const Args& a) {
  const Scenario sc = load(a);
  prepare_output_dir(a.out);
  for (const Table& t : simulation_dumps(sc)) write_table(t, a.out, parse_format(a.format));
  std::cout << "wrote path dumps for " << sc.kernels.size() << " kernel(s) to " << a.out << "\n";
  return 0;
}

int cmd_verify(const Args& a) {
  const Scenario sc = load(a);
  prepare_output_dir(a.out);
  const ScenarioRun run = run_scenario(sc, a.suites.empty() ? sc.suites : a.suites);
  const ReportFormat format = parse_format(a.format);
  for (const Table& t : run.tables) write_table(t, a.out, format);
  write_summary(run.summary, a.out, format);
  std::cout << summary_text(run.summary);
  for (const auto& row : run.rows) {
    if (!row.r.pass) {
      std::cerr << "FAIL " << row.suite << " " << row.r.identity << " eta=" << row.r.eta_id
                << " |lhs-rhs|=" << format_number(row.r.residual)
                << " tol=" << format_number(row.r.tolerance) << "\n";
    }
  }
  return run.summary.pass() ? 0 : 1;
}

// Rebuilds the summary from residual tables already on disk.
int cmd_report(const Args& a) {
  if (!fs::is_directory(a.out)) throw ConfigError("no report directory '" + a.out + "'");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a.out)) {
    if (e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<VerificationRow> rows;
  for (const auto& f : files) {
    const Table t = read_csv(f);
    const auto col = [&](const std::string& name) -> std::optional<std::size_t> {
      const auto it = std::find(t.columns.begin(), t.columns.end(), name);
      if (it == t.columns.end()) return std::nullopt;
      return static_cast<std::size_t>(it - t.columns.begin());
    };
    const auto pass = col("pass");
    auto id = col("identity_id");
    if (!id) id = col("formula_id");
    if (!pass || !id) continue;
    for (const auto& r : t.rows) {
      if (r.size() != t.columns.size()) throw ConfigError("malformed row in " + f.string());
      VerificationRow v;
      v.suite = t.name;
      const std::string& ident = r[*id];
      v.group = ident.substr(0, ident.find('['));
      v.r.identity = ident;
      v.r.pass = r[*pass] == "PASS";
      rows.push_back(std::move(v));
    }
  }
  const Summary s = summarize(fs::path(a.out).filename().string(), 0, 0, rows);
  write_summary(s, a.out, parse_format(a.format));
  std::cout << summary_text(s);
  return s.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and numerical verification for convoluted Lévy processes"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", a.out, "output directory")->capture_default_str();
    sub->add_option("--format", a.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto add_run = [&](CLI::App* sub) {
    sub->add_option("--config", a.config, "scenario config file")->required();
    sub->add_option("--seed", a.seed, "override the scenario seed");
    sub->add_option("--n", a.n, "override the Monte Carlo path count");
    add_common(sub);
  };

  CLI::App* sim = app.add_subcommand("simulate", "dump a jump path and M(t) for every kernel");
  add_run(sim);
  CLI::App* ver = app.add_subcommand("verify", "run verification suites");
  add_run(ver);
  ver->add_option("--suite", a.suites,
                  "simulate | stransform | skorokhod | frac | ito1 | ito2 | all (repeatable)");
  CLI::App* rep = app.add_subcommand("report", "summarize the residual CSVs in --out");
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(a);
    if (ver->parsed()) return cmd_verify(a);
    return cmd_report(a);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "contract violated: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
