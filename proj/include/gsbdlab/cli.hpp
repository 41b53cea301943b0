#pragma once

#include "gsbdlab/config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace gsbdlab {

struct RunOutcome {
  std::string verdict;
  int exit_code = 0;
  Json report = Json::object();
  std::vector<std::string> series_header;
  std::vector<std::vector<double>> series;
};

/// Validates the subcommand block of cfg.body and returns it with every default filled in. Throws ConfigError.
Json normalize_subcommand(const RunConfig& cfg);

/// 0 for PASS / HOLDS, 2 otherwise; expect_violation swaps the two.
int exit_code_for(const std::string& verdict, bool expect_violation);

/// Runs the subcommand without touching the file system.
RunOutcome execute(const RunConfig& cfg);

/// Runs the subcommand and writes report.json and series.csv to cfg.out_dir.
/// Library errors are reported by name on `log` and in report.json; the return value is 1 in that case.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace gsbdlab
