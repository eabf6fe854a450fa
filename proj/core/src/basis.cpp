#include "hho/basis.hpp"

#include <stdexcept>

namespace hho {

namespace {

// Exponent table for degrees 0..2.
constexpr int kExp[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};

}  // namespace

CellBasis::CellBasis(const Mesh& mesh, int t, int degree)
    : degree_(degree), center_(mesh.cell_centroid(t)), h_(mesh.cell_diameter(t)) {
  if (degree < 0 || degree > 2) throw std::invalid_argument("CellBasis: degree must be in {0,1,2}");
  if (!(h_ > 0.0)) throw std::invalid_argument("CellBasis: degenerate cell");
}

Eigen::VectorXd CellBasis::values(const Eigen::Vector2d& p) const {
  const double u = (p.x() - center_.x()) / h_;
  const double v = (p.y() - center_.y()) / h_;
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i)
    out[i] = std::pow(u, kExp[i][0]) * std::pow(v, kExp[i][1]);
  return out;
}

Eigen::Matrix<double, Eigen::Dynamic, 2> CellBasis::gradients(const Eigen::Vector2d& p) const {
  const double u = (p.x() - center_.x()) / h_;
  const double v = (p.y() - center_.y()) / h_;
  Eigen::Matrix<double, Eigen::Dynamic, 2> out(size(), 2);
  for (int i = 0; i < size(); ++i) {
    const int a = kExp[i][0], b = kExp[i][1];
    out(i, 0) = a == 0 ? 0.0 : a * std::pow(u, a - 1) * std::pow(v, b) / h_;
    out(i, 1) = b == 0 ? 0.0 : b * std::pow(u, a) * std::pow(v, b - 1) / h_;
  }
  return out;
}

Eigen::VectorXd CellBasis::laplacians() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
  if (degree_ >= 2) {
    out[3] = 2.0 / (h_ * h_);  // x^2
    out[5] = 2.0 / (h_ * h_);  // y^2
  }
  return out;
}

FaceBasis::FaceBasis(const Mesh& mesh, int f, int degree) : degree_(degree) {
  if (degree < 0 || degree > 1) throw std::invalid_argument("FaceBasis: degree must be in {0,1}");
  const Face& fc = mesh.face(f);
  midpoint_ = fc.midpoint;
  tangent_ = fc.tangent;
  h_ = fc.length;
}

Eigen::VectorXd FaceBasis::values(const Eigen::Vector2d& p) const {
  Eigen::VectorXd out(size());
  out[0] = 1.0;
  if (degree_ >= 1) out[1] = (p - midpoint_).dot(tangent_) / h_;
  return out;
}

Eigen::MatrixXd FaceBasis::mass() const {
  // s in [-1/2, 1/2] over the face: int 1 = h, int s = 0, int s^2 = h/12.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), size());
  m(0, 0) = h_;
  if (degree_ >= 1) m(1, 1) = h_ / 12.0;
  return m;
}

double integrate_cell(const Mesh& mesh, int t, int quad_degree, const ScalarFn& f) {
  const QuadRule& rule = triangle_rule(quad_degree);
  const auto& c = mesh.cell(t);
  const Eigen::Vector2d v0 = mesh.vertex(c[0]), v1 = mesh.vertex(c[1]), v2 = mesh.vertex(c[2]);
  const double jac = 2.0 * mesh.cell_area(t);
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::Vector2d p = rule.bary(q, 0) * v0 + rule.bary(q, 1) * v1 + rule.bary(q, 2) * v2;
    sum += rule.weights[q] * jac * f(p);
  }
  return sum;
}

double integrate_face(const Mesh& mesh, int f, int quad_degree, const ScalarFn& g) {
  const EdgeRule& rule = edge_rule(quad_degree);
  const Face& fc = mesh.face(f);
  const Eigen::Vector2d a = mesh.vertex(fc.v[0]), b = mesh.vertex(fc.v[1]);
  double sum = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::Vector2d p = a + rule.points[q] * (b - a);
    sum += rule.weights[q] * fc.length * g(p);
  }
  return sum;
}

Eigen::VectorXd project_cell(const Mesh& mesh, int t, int m, const ScalarFn& f,
                             int quad_degree) {
  CellBasis basis(mesh, t, m);
  const int n = basis.size();
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
  {
    const QuadRule& rule = triangle_rule(2 * m);
    const auto& c = mesh.cell(t);
    const Eigen::Vector2d v0 = mesh.vertex(c[0]), v1 = mesh.vertex(c[1]), v2 = mesh.vertex(c[2]);
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      Eigen::Vector2d p = rule.bary(q, 0) * v0 + rule.bary(q, 1) * v1 + rule.bary(q, 2) * v2;
      Eigen::VectorXd phi = basis.values(p);
      mass += rule.weights[q] * jac * phi * phi.transpose();
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  {
    const QuadRule& rule = triangle_rule(quad_degree);
    const auto& c = mesh.cell(t);
    const Eigen::Vector2d v0 = mesh.vertex(c[0]), v1 = mesh.vertex(c[1]), v2 = mesh.vertex(c[2]);
    const double jac = 2.0 * mesh.cell_area(t);
    for (int q = 0; q < rule.size(); ++q) {
      Eigen::Vector2d p = rule.bary(q, 0) * v0 + rule.bary(q, 1) * v1 + rule.bary(q, 2) * v2;
      rhs += rule.weights[q] * jac * f(p) * basis.values(p);
    }
  }
  return mass.ldlt().solve(rhs);
}

Eigen::VectorXd project_face(const Mesh& mesh, int f, int k, const ScalarFn& g,
                             int quad_degree) {
  FaceBasis basis(mesh, f, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
  const EdgeRule& rule = edge_rule(quad_degree);
  const Face& fc = mesh.face(f);
  const Eigen::Vector2d a = mesh.vertex(fc.v[0]), b = mesh.vertex(fc.v[1]);
  for (int q = 0; q < rule.size(); ++q) {
    Eigen::Vector2d p = a + rule.points[q] * (b - a);
    rhs += rule.weights[q] * fc.length * g(p) * basis.values(p);
  }
  Eigen::MatrixXd mass = basis.mass();
  Eigen::VectorXd coeffs(basis.size());
  for (int i = 0; i < basis.size(); ++i) coeffs[i] = rhs[i] / mass(i, i);
  return coeffs;
}

double eval_poly(const CellBasis& basis, const Eigen::VectorXd& coeffs,
                 const Eigen::Vector2d& p) {
  return basis.values(p).dot(coeffs);
}

Eigen::Vector2d eval_poly_gradient(const CellBasis& basis, const Eigen::VectorXd& coeffs,
                                   const Eigen::Vector2d& p) {
  return basis.gradients(p).transpose() * coeffs;
}

}  // namespace hho
