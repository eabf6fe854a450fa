#pragma once

#include "hho/assembly.hpp"
#include "hho/estimator.hpp"
#include "hho/mesh.hpp"
#include "hho/multiplier.hpp"
#include "hho/pdas.hpp"
#include "hho/postprocess.hpp"
#include "hho/problems.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hho {

struct MarkResult {
  std::vector<int> marked;
  bool converged = false;  // all indicators were zero
};

/// Greedy bulk marking: cells in descending eta_T^2 order (ties by ascending
/// index) until the marked sum reaches theta times the total.
MarkResult dorfler_mark(const Eigen::VectorXd& eta_sq, double theta);

enum class Strategy { adaptive, uniform };

struct AdaptOptions {
  int k = 1;
  double theta = 0.3;
  Strategy strategy = Strategy::adaptive;
  int max_dofs = 100000;
  int max_levels = 100;
  PdasOptions pdas;
  bool warm_start = true;
};

struct LevelRecord {
  int level = 0;
  int cells = 0;
  int dofs = 0;  // free dofs
  std::optional<double> error_energy;
  double eta_total = 0, eta1 = 0, eta2 = 0, eta3 = 0, eta_pos = 0, eta_contact = 0;
  std::optional<double> efficiency;
  int pdas_iters = 0;
  double seconds = 0;
  int active_cells = 0;
};

struct ConvergenceHistory {
  std::vector<LevelRecord> levels;
  bool completed = true;
  std::string abort_reason;
};

/// Everything a per-level observer may want to inspect.
struct LevelState {
  const Mesh& mesh;
  const DofMap& map;
  const Eigen::VectorXd& u_full;
  const GlobalSystem& system;
  const PdasResult& pdas;
  const Multiplier& multiplier;
  const PiecewiseField& reconstruction;
  const ConformingField& ustar;
  const EstimatorBreakdown& estimator;
};

using LevelObserver = std::function<void(int level, const LevelState&)>;

/// SOLVE -> ESTIMATE -> MARK -> REFINE until the dof cap or level cap is hit
/// or marking reports convergence. PDAS failure aborts with the partial
/// history. Children inherit the parent's active flag when warm starts are on.
ConvergenceHistory adaptive_loop(const ProblemSpec& problem, const AdaptOptions& opts,
                                 const LevelObserver& observer = {});

}  // namespace hho
