#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ptspec/io.hpp"

namespace ptspec::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Everything a run needs. Field names double as the keys of the JSON form
/// and, with '-' for '_', as the command-line flags.
struct RunConfig {
  std::string command;  ///< spectrum, contours, sweep, ss-find, split, dets, invisibility, oracle-check, reproduce-table

  std::string model = "scarf2";
  double v1 = 0.0;
  double v2 = 0.0;
  double a = 1.0;
  std::string potential_csv;

  std::optional<double> k1_min, k1_max, k2_min, k2_max;
  int n1 = 0;
  int n2 = 0;
  double grid_spacing = 0.1;
  double axis_tol = 1e-6;
  double dedup_tol = 1e-6;
  double residual_tol = 1e-9;

  double v2_min = 0.0;
  double v2_max = 0.0;
  double v2_step = 0.0;
  int m_max = 10;
  double v_star = 0.0;
  double epsilon = 0.1;
  bool strict_linking = false;

  double e_min = 0.1;
  double e_max = 20.0;
  int samples = 200;
  double tol = 1e-6;

  std::string table;
  int points = 20;
  std::uint64_t seed = 1;

  std::string output;  ///< empty writes the result to stdout and skips the manifest
  std::string format = "json";
  int jobs = 0;
};

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& config);

io::Json to_json(const RunConfig& config);
/// Accepts a RunConfig object or a run manifest (its "config" member).
/// Unknown keys are rejected.
RunConfig config_from_json(const io::Json& j);
RunConfig load_config(const std::string& path);

/// The analytic model (or the sampled potential) described by the config.
PotentialModel make_model(const RunConfig& config);

/// Executes the run, writing the result to config.output (or `out`) and the
/// manifest next to it. Returns 0 on success, 2 when a checked contract or a
/// table comparison fails. Errors propagate as exceptions.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Command-line entry point: parses flags, runs, maps errors to exit code 1.
int main(int argc, char** argv);

}  // namespace ptspec::cli
