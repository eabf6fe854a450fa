#pragma once

#include "hho/dofmap.hpp"
#include "hho/local_ops.hpp"
#include "hho/mesh.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace hho {

/// Assembled system over all dofs, Dirichlet rows included. The load vector
/// carries (f, 1)_T on cell dofs and zeros on face dofs.
struct GlobalSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd F;
};

GlobalSystem assemble_global(const Mesh& mesh, const DofMap& map, const ScalarFn& f,
                             int data_quad_degree = 4);

/// System after Dirichlet elimination. Free dofs keep their global relative
/// order, so the first n_cells reduced indices are exactly the cell dofs.
struct ReducedSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  std::vector<int> free_to_global;
  std::vector<int> global_to_free;  // -1 on Dirichlet dofs
  Eigen::VectorXd fixed_values;     // full-size, zero on free dofs
  int n_cells = 0;
};

ReducedSystem apply_boundary_data(const GlobalSystem& system, const DofMap& map,
                                  const Mesh& mesh, const ScalarFn& g,
                                  int data_quad_degree = 4);

/// Full-length dof vector from a free-dof vector plus the stored boundary data.
Eigen::VectorXd expand_solution(const ReducedSystem& reduced, const Eigen::VectorXd& u_free);

/// Cell means of the obstacle, the bounds defining the discrete constraint set.
std::vector<double> obstacle_averages(const Mesh& mesh, const ScalarFn& chi,
                                      int data_quad_degree = 4);

}  // namespace hho
