#include "clevy/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "clevy/errors.hpp"

namespace clevy {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const char* pass_text(bool pass) { return pass ? "PASS" : "FAIL"; }

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Table residual_table(const std::string& name, const std::vector<VerificationRow>& rows) {
  Table t{name,
          {"identity_id", "eta_id", "lhs", "rhs", "residual", "stderr", "tolerance", "pass"},
          {}};
  for (const auto& row : rows) {
    const auto& r = row.r;
    t.rows.push_back({r.identity, r.eta_id, format_number(r.lhs), format_number(r.rhs),
                      format_number(r.residual), format_number(r.std_error),
                      format_number(r.tolerance), pass_text(r.pass)});
  }
  return t;
}

Table formula_table(const std::string& name, const std::vector<VerificationRow>& rows,
                    const std::string& measure, const std::string& g) {
  Table t{name,
          {"formula_id", "kernel", "measure", "G", "eta_id", "lhs", "rhs", "residual", "tolerance",
           "pass"},
          {}};
  for (const auto& row : rows) {
    const auto& r = row.r;
    t.rows.push_back({r.identity, row.kernel, measure, g, r.eta_id, format_number(r.lhs),
                      format_number(r.rhs), format_number(r.residual), format_number(r.tolerance),
                      pass_text(r.pass)});
  }
  return t;
}

std::string csv_text(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << csv_field(t.columns[i]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string json_text(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json doc;
  doc["table"] = t.name;
  doc["columns"] = t.columns;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::size_t Summary::passed() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.passed;
  return n;
}

std::size_t Summary::failed() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.failed;
  return n;
}

Summary summarize(const std::string& scenario, std::uint64_t seed, std::size_t paths,
                  const std::vector<VerificationRow>& rows) {
  Summary s{scenario, seed, paths, {}};
  for (const auto& row : rows) {
    auto it = std::find_if(s.groups.begin(), s.groups.end(), [&](const GroupSummary& g) {
      return g.suite == row.suite && g.group == row.group;
    });
    if (it == s.groups.end()) {
      s.groups.push_back({row.suite, row.group, 0, 0});
      it = s.groups.end() - 1;
    }
    (row.r.pass ? it->passed : it->failed) += 1;
  }
  return s;
}

std::string summary_text(const Summary& s) {
  std::ostringstream os;
  os << "scenario " << s.scenario << "  seed " << s.seed << "  paths " << s.paths << "\n\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %-28s %6s %6s  %s\n", "suite", "identity", "pass",
                "fail", "status");
  os << line;
  for (const auto& g : s.groups) {
    std::snprintf(line, sizeof line, "%-12s %-28s %6zu %6zu  %s\n", g.suite.c_str(),
                  g.group.c_str(), g.passed, g.failed, pass_text(g.failed == 0));
    os << line;
  }
  os << "\nidentity suites: " << s.groups.size() << "  checks passed: " << s.passed()
     << "  failed: " << s.failed() << "\n";
  os << "RESULT " << pass_text(s.pass()) << "\n";
  return os.str();
}

std::string summary_json(const Summary& s) {
  nlohmann::ordered_json doc;
  doc["scenario"] = s.scenario;
  doc["seed"] = s.seed;
  doc["paths"] = s.paths;
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& g : s.groups) {
    groups.push_back({{"suite", g.suite},
                      {"identity", g.group},
                      {"pass", g.passed},
                      {"fail", g.failed},
                      {"status", pass_text(g.failed == 0)}});
  }
  doc["identity_suites"] = std::move(groups);
  doc["checks_passed"] = s.passed();
  doc["checks_failed"] = s.failed();
  doc["result"] = pass_text(s.pass());
  return doc.dump(2) + "\n";
}

void prepare_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory '" + dir.string() + "'");
  }
  const auto probe = dir / ".clevy_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw ConfigError("output directory '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + file.string() + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + file.string() + "'");
}

void write_table(const Table& t, const std::filesystem::path& dir, ReportFormat format) {
  if (format == ReportFormat::Json) {
    write_text(dir / (t.name + ".json"), json_text(t));
  } else {
    write_text(dir / (t.name + ".csv"), csv_text(t));
  }
}

Table read_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read '" + file.string() + "'");
  Table t;
  t.name = file.stem().string();
  std::string line;
  if (std::getline(in, line)) t.columns = split_csv_line(line);
  while (std::getline(in, line)) {
    if (!line.empty()) t.rows.push_back(split_csv_line(line));
  }
  return t;
}

}  // namespace clevy
