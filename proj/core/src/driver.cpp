#include "hho/driver.hpp"

#include "hho/history.hpp"
#include "hho/mesh_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace hho {

namespace {

nlohmann::json config_echo(const RunConfig& c) {
  return nlohmann::json{{"problem", c.problem},
                        {"k", c.k},
                        {"theta", c.theta},
                        {"strategy", c.strategy},
                        {"max_dofs", c.max_dofs},
                        {"max_levels", c.max_levels},
                        {"output", c.output_dir},
                        {"export_mesh_every", c.export_mesh_every},
                        {"warm_start", c.warm_start},
                        {"pdas_tol", c.pdas_tol},
                        {"pdas_max_iter", c.pdas_max_iter},
                        {"pdas_complementarity_weight", 1.0},
                        {"seed", c.seed}};
}

}  // namespace

int run(const RunConfig& config, ConvergenceHistory& history) {
  ProblemSpec problem;
  try {
    problem = problem_by_name(config.problem);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  if (config.k < 0 || config.k > 1) {
    std::cerr << "config error: k must be 0 or 1\n";
    return 1;
  }
  if (!(config.theta > 0.0 && config.theta < 1.0)) {
    std::cerr << "config error: theta must be in (0,1)\n";
    return 1;
  }
  if (config.strategy != "adaptive" && config.strategy != "uniform") {
    std::cerr << "config error: strategy must be adaptive or uniform\n";
    return 1;
  }
  const int initial_dofs = build_dof_map(problem.initial_mesh, config.k).free_count;
  if (config.max_dofs < initial_dofs) {
    std::cerr << "config error: max_dofs below the initial dof count ("
              << initial_dofs << ")\n";
    return 1;
  }

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec || !std::filesystem::is_directory(config.output_dir)) {
    std::cerr << "config error: cannot create output directory " << config.output_dir
              << "\n";
    return 1;
  }

  AdaptOptions opts;
  opts.k = config.k;
  opts.theta = config.theta;
  opts.strategy = config.strategy == "uniform" ? Strategy::uniform : Strategy::adaptive;
  opts.max_dofs = config.max_dofs;
  opts.max_levels = config.max_levels;
  opts.warm_start = config.warm_start;
  opts.pdas.tol = config.pdas_tol;
  opts.pdas.max_iter = config.pdas_max_iter;

  LevelObserver observer = [&](int level, const LevelState& state) {
    if (config.export_mesh_every > 0 && level % config.export_mesh_every == 0)
      export_mesh(state.mesh,
                  config.output_dir + "/mesh_" + std::to_string(level) + ".json");
  };

  history = adaptive_loop(problem, opts, observer);

  if (!config.quiet)
    for (const LevelRecord& r : history.levels)
      std::printf("level %3d  cells %7d  dofs %8d  eta %.6e  active %6d  pdas %2d  %.2fs\n",
                  r.level, r.cells, r.dofs, r.eta_total, r.active_cells, r.pdas_iters,
                  r.seconds);

  // Files are a deterministic function of the configuration; wall-clock goes
  // to the console only.
  ConvergenceHistory filed = history;
  for (LevelRecord& r : filed.levels) r.seconds = 0.0;
  write_history(filed, config.output_dir + "/history.csv");
  {
    std::ofstream out(config.output_dir + "/config.json", std::ios::binary);
    out << config_echo(config).dump(2) << "\n";
  }

  if (!history.completed) {
    std::cerr << "solver failure: " << history.abort_reason << "\n";
    return 2;
  }
  return 0;
}

int run(const RunConfig& config) {
  ConvergenceHistory history;
  return run(config, history);
}

}  // namespace hho
