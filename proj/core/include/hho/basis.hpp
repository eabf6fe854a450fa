#pragma once

#include "hho/mesh.hpp"
#include "hho/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>

namespace hho {

using ScalarFn = std::function<double(const Eigen::Vector2d&)>;

inline int cell_basis_size(int degree) { return (degree + 1) * (degree + 2) / 2; }
inline int face_basis_size(int degree) { return degree + 1; }

/// Scaled monomials ((x - x_T) / h_T)^alpha, |alpha| <= degree, centered at
/// the cell centroid. Ordering: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
class CellBasis {
 public:
  CellBasis(const Mesh& mesh, int t, int degree);

  int size() const { return cell_basis_size(degree_); }
  int degree() const { return degree_; }

  Eigen::VectorXd values(const Eigen::Vector2d& p) const;
  /// Gradients row-wise: row i is the gradient of basis function i.
  Eigen::Matrix<double, Eigen::Dynamic, 2> gradients(const Eigen::Vector2d& p) const;
  /// Laplacians of the basis functions (constant fields for degree <= 2).
  Eigen::VectorXd laplacians() const;

 private:
  int degree_;
  Eigen::Vector2d center_;
  double h_;
};

/// Scaled monomials ((x - x_F) . t_F / h_F)^j in the arc-length parameter,
/// centered at the face midpoint.
class FaceBasis {
 public:
  FaceBasis(const Mesh& mesh, int f, int degree);

  int size() const { return face_basis_size(degree_); }
  int degree() const { return degree_; }

  Eigen::VectorXd values(const Eigen::Vector2d& p) const;
  /// Exact mass matrix (diagonal in this basis for degree <= 1).
  Eigen::MatrixXd mass() const;

 private:
  int degree_;
  Eigen::Vector2d midpoint_;
  Eigen::Vector2d tangent_;
  double h_;
};

double integrate_cell(const Mesh& mesh, int t, int quad_degree, const ScalarFn& f);
double integrate_face(const Mesh& mesh, int f, int quad_degree, const ScalarFn& g);

/// L^2(T)-orthogonal projection onto P^m(T) in the scaled-monomial basis;
/// quad_degree controls the integration of f against the basis.
Eigen::VectorXd project_cell(const Mesh& mesh, int t, int m, const ScalarFn& f,
                             int quad_degree);

/// L^2(F)-orthogonal projection onto P^k(F).
Eigen::VectorXd project_face(const Mesh& mesh, int f, int k, const ScalarFn& g,
                             int quad_degree);

double eval_poly(const CellBasis& basis, const Eigen::VectorXd& coeffs,
                 const Eigen::Vector2d& p);
Eigen::Vector2d eval_poly_gradient(const CellBasis& basis, const Eigen::VectorXd& coeffs,
                                   const Eigen::Vector2d& p);

}  // namespace hho
