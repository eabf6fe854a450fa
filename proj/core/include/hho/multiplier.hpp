#pragma once

#include "hho/assembly.hpp"
#include "hho/dofmap.hpp"
#include "hho/mesh.hpp"

#include <Eigen/Dense>

namespace hho {

/// Discrete Lagrange multiplier: per-cell values sigma_T and per-face
/// coefficient blocks sigma_F (in the face scaled basis). At a converged
/// solve sigma_T <= 0 everywhere, sigma_T = 0 off the contact set and
/// sigma_F = 0 on interior faces; boundary-face blocks carry the discrete
/// fluxes and are recorded without a sign assertion.
struct Multiplier {
  Eigen::VectorXd sigma_cell;
  Eigen::MatrixXd sigma_face;  // n_faces x (k+1)
};

/// Defined by testing the residual load - A u against every basis dof:
/// |T| sigma_T = (f,1)_T - (A u)_cell(T), and for each face the block solves
/// the face mass system with right-hand side -(A u)_face(F).
Multiplier compute_multiplier(const Mesh& mesh, const DofMap& map,
                              const GlobalSystem& system, const Eigen::VectorXd& u_full);

}  // namespace hho
