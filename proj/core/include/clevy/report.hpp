#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clevy/residual.hpp"

namespace clevy {

enum class ReportFormat { Csv, Json };

// A rectangular table of already formatted cells.
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Round-trip formatting (%.17g) so that reruns compare byte for byte.
std::string format_number(double x);

// One verified identity, tagged with the suite and identity group it belongs to.
struct VerificationRow {
  std::string suite;
  std::string group;
  std::string kernel;  // empty when the identity does not involve a kernel
  IdentityResidual r;
};

// identity_id, eta_id, lhs, rhs, residual, stderr, tolerance, pass
Table residual_table(const std::string& name, const std::vector<VerificationRow>& rows);
// formula_id, kernel, measure, G, eta_id, lhs, rhs, residual, tolerance, pass
Table formula_table(const std::string& name, const std::vector<VerificationRow>& rows,
                    const std::string& measure, const std::string& g);

std::string csv_text(const Table& t);
std::string json_text(const Table& t);

struct GroupSummary {
  std::string suite;
  std::string group;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Summary {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  std::vector<GroupSummary> groups;  // in order of first appearance
  std::size_t passed() const;
  std::size_t failed() const;
  bool pass() const { return failed() == 0; }
};

Summary summarize(const std::string& scenario, std::uint64_t seed, std::size_t paths,
                  const std::vector<VerificationRow>& rows);
std::string summary_text(const Summary& s);
std::string summary_json(const Summary& s);

// Creates `dir` if needed and checks that it is writable; throws ConfigError otherwise.
void prepare_output_dir(const std::filesystem::path& dir);
// Writes <dir>/<name>.csv or .json.
void write_table(const Table& t, const std::filesystem::path& dir, ReportFormat format);
void write_text(const std::filesystem::path& file, const std::string& text);

// Reads a table written in CSV form (quoted fields allowed).
Table read_csv(const std::filesystem::path& file);

}  // namespace clevy
