#pragma once

#include <Eigen/Sparse>

namespace hho {

/// Direct sparse LDL^T solve of an SPD system, with a conjugate-gradient
/// fallback at relative residual 1e-12 if the factorization fails.
Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b);

}  // namespace hho
