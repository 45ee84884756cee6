#pragma once

#include <string>
#include <vector>

namespace pmlwave {

enum class ExperimentId { Experiment1, Experiment2, Experiment3, Verify, Run };

ExperimentId parse_experiment(const std::string& name);
std::string to_string(ExperimentId id);

/**
 * Resolved settings for one CLI invocation. Zero for M, n_modes or N_series
 * selects the experiment's automatic value.
 */
struct RunConfig {
  ExperimentId experiment = ExperimentId::Experiment1;
  std::vector<double> R{2.0};
  double alpha0 = 2.0;
  double dt = 0.005;
  int M = 0;
  int n_modes = 0;
  std::vector<double> c{0.0};
  double L = 3.0;
  int N_series = 0;
  double T = 5.0;
  std::string out_dir = "out";
  double spacing = 0.01;  // radial spacing used when M is 0; set per experiment

  /// Experiment defaults before any file or override is applied.
  static RunConfig defaults(ExperimentId id);

  /// Applies one key=value assignment; throws ConfigError on an unknown key or bad value.
  void set(const std::string& key, const std::string& value);
  /// Reads `key = value` lines; '#' starts a comment.
  void load_file(const std::string& path);
  /// Checks every precondition that can be checked before computing.
  void validate() const;

  /// Single-line `key=value` rendering of every key, for provenance comments.
  std::string provenance() const;

  /// Radial intervals for truncation radius R.
  int grid_intervals(double R) const;
};

/// Defaults, then the optional file, then each `--set` assignment in order.
RunConfig resolve_config(ExperimentId id, const std::string& config_path, const std::vector<std::string>& sets);

}  // namespace pmlwave
