#pragma once

#include "hho/dofmap.hpp"
#include "hho/mesh.hpp"
#include "hho/multiplier.hpp"
#include "hho/postprocess.hpp"
#include "hho/problems.hpp"

#include <Eigen/Dense>

#include <vector>

namespace hho {

/// Per-element squared estimator contributions.
///   e1   = || grad(p u - u*) ||_T^2
///   e2   = h_T^2 || (f + Lap p u - sigma_T) - mean of the same ||_T^2
///   e3   = s_T(u, u)
///   epos = || grad (chi - u*)^+ ||_T^2
///   econ = int_T sigma_T min(chi - u*, 0), nonnegative since sigma_T <= 0,
///          taken on contact cells only.
struct EstimatorBreakdown {
  Eigen::VectorXd e1, e2, e3, epos, econ;
  Eigen::VectorXd total;  // per-cell eta_T^2

  double eta1_sq = 0, eta2_sq = 0, eta3_sq = 0, epos_sq = 0, econ_sum = 0;
  double eta_sq() const { return eta1_sq + eta2_sq + eta3_sq + epos_sq + econ_sum; }
  double eta() const { return std::sqrt(eta_sq()); }
};

EstimatorBreakdown estimate(const Mesh& mesh, const DofMap& map,
                            const Eigen::VectorXd& u_full, const PiecewiseField& rec,
                            const Multiplier& mult, const std::vector<char>& active,
                            const ConformingField& ustar, const ProblemSpec& problem);

/// || grad_h (u_exact - p u_h) ||: elementwise quadrature of degree 6, with a
/// degree-10 rule on 2 levels of uniform subdivision for cells straddling a
/// declared interface circle or containing the singular corner.
double exact_energy_error(const Mesh& mesh, const PiecewiseField& rec,
                          const ProblemSpec& problem);

/// eta / error; throws std::domain_error when the error is not positive.
double efficiency_index(double error, double eta);

/// h_T^2 || f - mean_T f ||_T^2 by the same quadrature as the estimator.
double data_oscillation_sq(const Mesh& mesh, int t, const ScalarFn& f, int quad_degree = 4);

/// Monitored local-efficiency diagnostic: per cell,
/// eta_T / sqrt(patch error^2 + patch stabilization + patch oscillation^2)
/// over the vertex-neighborhood patch of T.
Eigen::VectorXd local_efficiency_ratios(const Mesh& mesh, const DofMap& map,
                                        const Eigen::VectorXd& u_full,
                                        const PiecewiseField& rec,
                                        const EstimatorBreakdown& est,
                                        const ProblemSpec& problem);

}  // namespace hho
