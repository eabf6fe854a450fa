#pragma once

#include "hho/basis.hpp"
#include "hho/dofmap.hpp"
#include "hho/mesh.hpp"

#include <Eigen/Dense>

namespace hho {

/// Broken polynomial field: one degree-d coefficient block per cell in the
/// cell's scaled-monomial basis.
class PiecewiseField {
 public:
  PiecewiseField(const Mesh& mesh, int degree, Eigen::MatrixXd coeffs);

  int degree() const { return degree_; }
  const Eigen::MatrixXd& coefficients() const { return coeffs_; }
  Eigen::VectorXd cell_coefficients(int t) const { return coeffs_.row(t); }

  double value(const Mesh& mesh, int t, const Eigen::Vector2d& p) const;
  Eigen::Vector2d gradient(const Mesh& mesh, int t, const Eigen::Vector2d& p) const;

 private:
  int degree_;
  Eigen::MatrixXd coeffs_;  // n_cells x dim P^degree
};

/// p_h^{k+1} u_h: per-cell reconstruction of the discrete solution.
PiecewiseField reconstruct_field(const Mesh& mesh, const DofMap& map,
                                 const Eigen::VectorXd& u_full);

/// Continuous Lagrange nodes of degree 1 or 2: vertices, then face midpoints
/// (node id = vertex_count + face index) for degree 2.
struct LagrangeNodes {
  int degree = 1;
  int count = 0;

  static LagrangeNodes create(const Mesh& mesh, int degree);
  Eigen::Vector2d coordinate(const Mesh& mesh, int node) const;
  bool on_boundary(const Mesh& mesh, int node) const;
};

/// Continuous piecewise-P^degree field defined by nodal values.
class ConformingField {
 public:
  ConformingField(int degree, Eigen::VectorXd node_values);

  int degree() const { return degree_; }
  const Eigen::VectorXd& node_values() const { return values_; }

  double value(const Mesh& mesh, int t, const Eigen::Vector2d& p) const;
  Eigen::Vector2d gradient(const Mesh& mesh, int t, const Eigen::Vector2d& p) const;

 private:
  int degree_;
  Eigen::VectorXd values_;
};

/// Node-averaging map: interior nodes take the mean of the per-cell values
/// over the incident cells; boundary nodes take boundary_values(N).
ConformingField node_average(const Mesh& mesh, const PiecewiseField& w,
                             const ScalarFn& boundary_values);

/// Averaging applied to nodal data already continuous (used for idempotence).
ConformingField node_average(const Mesh& mesh, const ConformingField& w,
                             const ScalarFn& boundary_values);

/// u* = E(p u_h) with boundary nodes set from the Dirichlet data.
ConformingField conforming_post(const Mesh& mesh, const DofMap& map,
                                const Eigen::VectorXd& u_full, const ScalarFn& g);

}  // namespace hho
