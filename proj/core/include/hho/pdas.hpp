#pragma once

#include "hho/assembly.hpp"
#include "hho/mesh.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hho {

struct PdasOptions {
  double complementarity_weight = 1.0;
  int max_iter = 50;
  double tol = 1e-10;
  /// Warm-start active flags, one per cell; empty starts from the empty set.
  std::vector<char> initial_active;
};

/// Outcome of the primal-dual active-set iteration. The multiplier estimate
/// lambda = b - A u lives on cell dofs, is zero off the active set and
/// nonpositive on it at convergence; it equals |T| sigma_T cell-wise.
struct PdasResult {
  Eigen::VectorXd u;           // free-dof vector
  Eigen::VectorXd lambda;      // per cell
  std::vector<char> active;    // per cell
  int iterations = 0;
  bool converged = false;
  bool cycled = false;
};

PdasResult solve_pdas(const ReducedSystem& reduced, const std::vector<double>& chi_bar,
                      const Mesh& mesh, const PdasOptions& opts = {});

struct KktResiduals {
  double stationarity = 0.0;
  double feasibility = 0.0;
  double sign = 0.0;
  double complementarity = 0.0;

  double max() const;
};

/// Max-norm residuals of the four KKT conditions at (u, lambda).
KktResiduals kkt_residual(const ReducedSystem& reduced, const std::vector<double>& chi_bar,
                          const Eigen::VectorXd& u, const Eigen::VectorXd& lambda);

}  // namespace hho
