#pragma once

// Job description and dispatcher behind the command-line tool.

#include <ostream>
#include <string>
#include <vector>

namespace wpdist {

struct JobConfig {
  std::string command;
  std::string input_path;
  std::string output_path;  ///< empty: standard output
  std::string fixture_name;
  std::string curve = "diagonal";
  std::string metric = "full";  ///< full | dominant
  std::string report_path;      ///< distance: optional JSON verdicts next to the CSV
  double t0 = 10.0;
  double T = 1e4;
  int checkpoints = 4;  ///< per decade
  double grid_lo = 1e2;
  double grid_hi = 1e6;
  double tolerance = 1e-8;
};

namespace exit_code {
constexpr int ok = 0;
constexpr int schema = 2;
constexpr int domain = 3;
constexpr int negative = 4;
}  // namespace exit_code

const std::vector<std::string>& commands();

/// Runs one job; diagnostics go to `log`, results to the output path.
int run(const JobConfig& config, std::ostream& log);

}  // namespace wpdist
