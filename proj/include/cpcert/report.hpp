// report.hpp -- run configuration, report assembly, and JSON/CSV emission for
// the certification CLI. Reports are deterministic for a fixed config: records
// are sorted by (name, trial, dim, parameters) and all numbers are formatted
// with fixed precision, so reruns are byte-identical apart from wall time.
#pragma once

#include "cpcert/experiments.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cpcert {

struct RunConfig {
  std::string command;
  std::vector<int> dims = {2, 3, 4, 8};
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<double> p_list = {1.1, 1.25, 1.5, 1.75, 2.0};
  std::vector<double> alpha_list = {0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  std::vector<double> epsilon_list;  // command-specific default when empty
  double tolerance = 1e-9;
  std::string format = "json";  // json | csv
  std::string out = "-";        // "-" writes to stdout

  // command-specific knobs
  std::string ensemble = "wishart";
  std::vector<std::string> inequalities;  // empty selects every known one
  int rank = 0;                           // 0 -> ensemble default
  double step_size = 1e-5;                // gradient-check step
  double gradient_tolerance = 1e-6;
  double slope_band = 0.02;  // allowed deviation of fitted sweep exponents
  double k0 = 0.25;          // iterate-constant seed value
  int steps = 20;
  int k_max = 6;  // alpha -> 1 grid depth for the example command
};

struct ReportRecord {
  std::string name;
  int dim = 0;    // 0 when the record has no matrix dimension
  int trial = 0;  // also used as the step / grid index
  std::string parameters;  // canonical "key=value;..." sorted by key
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::string status;
};

struct ReportAggregate {
  double min_gap = 0.0;  // over finite gaps
  long violations = 0;
  double wall_time_seconds = 0.0;
  std::map<std::string, InequalityStats> per_inequality;
};

struct Report {
  std::string schema_version = "1.0";
  RunConfig config;
  std::vector<ReportRecord> records;
  ReportAggregate aggregate;
};

// %.17g with infinities rendered as "inf"/"-inf".
std::string format_double(double v);
// shortest round-trip formatting, used inside parameter strings
std::string format_param(double v);

// Canonical parameter string: metadata plus trial (and dim when positive),
// keys sorted, values in shortest round-trip form.
std::string parameters_string(const std::map<std::string, double>& metadata,
                              int dim, int trial);

ReportRecord to_record(const TrialCertificate& tc);

// Sorts records, fills aggregate statistics (wall time left untouched).
void finalize_report(Report& report);

std::string to_json(const Report& report);
std::string to_csv(const Report& report);

// Executes the configured command and assembles the report (wall time
// included). Throws std::invalid_argument on domain errors.
Report run_command(const RunConfig& config);

// Full CLI entry point: parses args (excluding argv[0]), runs the command,
// writes the report. Returns 0 when no record is violated, 2 when at least
// one is, 1 on usage or domain errors.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cpcert
