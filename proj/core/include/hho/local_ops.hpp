#pragma once

#include "hho/basis.hpp"
#include "hho/mesh.hpp"

#include <Eigen/Dense>

namespace hho {

/// Local dof vector layout for a cell: [v_T, face block 0, face block 1,
/// face block 2], where face block e (length k+1) belongs to the local edge e
/// (the edge opposite local vertex e) in the face's own scaled basis.
inline int local_dof_count(int k) { return 1 + 3 * (k + 1); }
inline int local_face_offset(int e, int k) { return 1 + e * (k + 1); }

/// Element-local operators in the cell's scaled-monomial basis of degree k+1.
///   R: potential reconstruction, (dim P^{k+1}) x ndof;
///   G: reconstruction stiffness R^T K R;
///   S: least-squares face stabilization;
///   A: G + S, symmetric positive semidefinite with kernel spanned by the
///      constant dof vector.
struct LocalOperators {
  Eigen::MatrixXd R;
  Eigen::MatrixXd G;
  Eigen::MatrixXd S;
  Eigen::MatrixXd A;
};

/// (pi^0_T v, (pi^k_F v)_F) as a local dof vector.
Eigen::VectorXd interpolate_local(const Mesh& mesh, int t, int k, const ScalarFn& v,
                                  int quad_degree = 4);

/// Reconstruction matrix R_T: for w = R_T v,
///   (grad w, grad q)_T = sum_F (v_F - v_T, grad q . n_TF)_F  for all q,
///   int_T w = |T| v_T.
Eigen::MatrixXd gradient_reconstruction(const Mesh& mesh, int t, int k);

/// S_T with S_T v . v = sum_F h_F^{-1} || pi^k_F(v_F - (R_T v)|_F) ||_F^2.
Eigen::MatrixXd stabilization(const Mesh& mesh, int t, int k, const Eigen::MatrixXd& R);

/// s_T(v, v) through the factored form, a sum of squares. Unlike v . (S v)
/// this stays accurate (and nonnegative) near the kernel, where the matrix
/// route floors out around machine epsilon times the norm of v.
double stabilization_energy(const Mesh& mesh, int t, int k, const Eigen::MatrixXd& R,
                            const Eigen::VectorXd& v);

LocalOperators local_stiffness(const Mesh& mesh, int t, int k);

/// Gram matrix of the discrete seminorm sum_F h_F^{-1} ||v_F - v_T||_F^2.
Eigen::MatrixXd local_seminorm_gram(const Mesh& mesh, int t, int k);

}  // namespace hho
