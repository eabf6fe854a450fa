#include "hho/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include <stdexcept>

namespace hho {

Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() == Eigen::Success) {
    Eigen::VectorXd x = ldlt.solve(b);
    if (ldlt.info() == Eigen::Success) return x;
  }
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(10 * A.rows() + 100);
  cg.compute(A);
  Eigen::VectorXd x = cg.solve(b);
  if (cg.info() != Eigen::Success)
    throw std::runtime_error("solve_spd: both LDLT and CG failed");
  return x;
}

}  // namespace hho
