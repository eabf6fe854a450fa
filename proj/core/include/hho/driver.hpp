#pragma once

#include "hho/adapt.hpp"

#include <optional>
#include <string>

namespace hho {

/// Resolved run configuration; every field has a default so the echoed
/// config.json makes a run replayable.
struct RunConfig {
  std::string problem = "example1";
  int k = 1;
  double theta = 0.3;
  std::string strategy = "adaptive";  // adaptive | uniform
  int max_dofs = 100000;
  int max_levels = 100;
  std::string output_dir = "out";
  int export_mesh_every = 0;  // 0 disables snapshots
  bool warm_start = true;
  double pdas_tol = 1e-10;
  int pdas_max_iter = 50;
  unsigned seed = 0;  // test-harness hook, unused by the solver
  bool quiet = false;
};

/// Runs the adaptive (or uniform) loop and writes history.csv, config.json
/// and mesh_<level>.json snapshots into the output directory. All files are
/// a pure function of the configuration: the seconds column in history.csv
/// is zeroed, timings go to stdout only.
///
/// Exit status: 0 completed, 1 configuration error, 2 solver failure.
int run(const RunConfig& config);

/// In-memory variant used by tests: returns the history (with measured
/// timings) alongside the exit code.
int run(const RunConfig& config, ConvergenceHistory& history);

}  // namespace hho
