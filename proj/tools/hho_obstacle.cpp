#include "hho/driver.hpp"
#include "hho/problems.hpp"

#include <CLI11.hpp>

#include <string>

int main(int argc, char** argv) {
  hho::RunConfig config;

  CLI::App app{"Adaptive lowest-order HHO solver for the elliptic obstacle problem"};
  std::string names;
  for (const auto& n : hho::problem_names()) names += (names.empty() ? "" : ", ") + n;

  app.add_option("--problem", config.problem, "Benchmark problem (" + names + ")")
      ->capture_default_str();
  app.add_option("--k", config.k, "Face polynomial degree, 0 or 1")->capture_default_str();
  app.add_option("--theta", config.theta, "Bulk marking fraction in (0,1)")
      ->capture_default_str();
  app.add_option("--strategy", config.strategy, "adaptive or uniform")
      ->capture_default_str();
  app.add_option("--max-dofs", config.max_dofs, "Stop once the free dof count reaches this")
      ->capture_default_str();
  app.add_option("--max-levels", config.max_levels, "Maximum number of levels")
      ->capture_default_str();
  app.add_option("--output", config.output_dir, "Output directory")->capture_default_str();
  app.add_option("--export-mesh-every", config.export_mesh_every,
                 "Write mesh_<level>.json every N levels (0 = never)")
      ->capture_default_str();
  bool no_warm_start = false;
  app.add_flag("--no-warm-start", no_warm_start,
               "Do not seed the active set from the parent mesh");
  app.add_option("--pdas-tol", config.pdas_tol, "Active-set solver tolerance")
      ->capture_default_str();
  app.add_option("--pdas-max-iter", config.pdas_max_iter,
                 "Active-set solver iteration cap")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed (test harness only)")
      ->capture_default_str();
  app.add_flag("--quiet", config.quiet, "Suppress per-level console output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  config.warm_start = !no_warm_start;

  return hho::run(config);
}
