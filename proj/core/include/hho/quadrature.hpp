#pragma once

#include <Eigen/Dense>

namespace hho {

/// Quadrature rule on the reference triangle {x >= 0, y >= 0, x + y <= 1},
/// stored in barycentric coordinates (lambda0, lambda1, lambda2) with weights
/// summing to the reference area 1/2. Exact for bivariate polynomials up to
/// the advertised total degree.
struct QuadRule {
  Eigen::Matrix<double, Eigen::Dynamic, 3> bary;
  Eigen::VectorXd weights;
  int degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre rule on [0, 1] with weights summing to 1.
struct EdgeRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
  int degree = 0;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Rule exact up to the requested total degree, degree <= 10.
/// Throws std::invalid_argument for unsupported degrees.
const QuadRule& triangle_rule(int degree);

/// Gauss rule on [0,1] exact up to the requested degree, degree <= 21.
const EdgeRule& edge_rule(int degree);

/// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

}  // namespace hho
