#include "hho/postprocess.hpp"

#include "hho/local_ops.hpp"

#include <stdexcept>

namespace hho {

namespace {

Eigen::Vector3d barycentric(const Mesh& mesh, int t, const Eigen::Vector2d& p) {
  const auto& c = mesh.cell(t);
  const Eigen::Vector2d v0 = mesh.vertex(c[0]), v1 = mesh.vertex(c[1]), v2 = mesh.vertex(c[2]);
  const double a = 2.0 * mesh.cell_area(t);
  auto tri = [](const Eigen::Vector2d& x, const Eigen::Vector2d& y, const Eigen::Vector2d& z) {
    return (y.x() - x.x()) * (z.y() - x.y()) - (z.x() - x.x()) * (y.y() - x.y());
  };
  return {tri(p, v1, v2) / a, tri(p, v2, v0) / a, tri(p, v0, v1) / a};
}

// Constant barycentric gradients: grad lambda_i, row i.
Eigen::Matrix<double, 3, 2> barycentric_gradients(const Mesh& mesh, int t) {
  const auto& c = mesh.cell(t);
  const double a = 2.0 * mesh.cell_area(t);
  Eigen::Matrix<double, 3, 2> g;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector2d& u = mesh.vertex(c[(i + 1) % 3]);
    const Eigen::Vector2d& w = mesh.vertex(c[(i + 2) % 3]);
    g(i, 0) = (u.y() - w.y()) / a;
    g(i, 1) = (w.x() - u.x()) / a;
  }
  return g;
}

}  // namespace

PiecewiseField::PiecewiseField(const Mesh& mesh, int degree, Eigen::MatrixXd coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != mesh.cell_count() || coeffs_.cols() != cell_basis_size(degree))
    throw std::invalid_argument("PiecewiseField: coefficient shape mismatch");
}

double PiecewiseField::value(const Mesh& mesh, int t, const Eigen::Vector2d& p) const {
  CellBasis basis(mesh, t, degree_);
  return basis.values(p).dot(coeffs_.row(t));
}

Eigen::Vector2d PiecewiseField::gradient(const Mesh& mesh, int t,
                                         const Eigen::Vector2d& p) const {
  CellBasis basis(mesh, t, degree_);
  return basis.gradients(p).transpose() * coeffs_.row(t).transpose();
}

PiecewiseField reconstruct_field(const Mesh& mesh, const DofMap& map,
                                 const Eigen::VectorXd& u_full) {
  const int k = map.k;
  Eigen::MatrixXd coeffs(mesh.cell_count(), cell_basis_size(k + 1));
  Eigen::VectorXd local(local_dof_count(k));
  for (int t = 0; t < mesh.cell_count(); ++t) {
    local[0] = u_full[map.cell_dof(t)];
    for (int e = 0; e < 3; ++e)
      for (int j = 0; j <= k; ++j)
        local[local_face_offset(e, k) + j] = u_full[map.face_dof(mesh.cell_face(t, e), j)];
    coeffs.row(t) = (gradient_reconstruction(mesh, t, k) * local).transpose();
  }
  return PiecewiseField(mesh, k + 1, std::move(coeffs));
}

LagrangeNodes LagrangeNodes::create(const Mesh& mesh, int degree) {
  if (degree < 1 || degree > 2)
    throw std::invalid_argument("LagrangeNodes: degree must be 1 or 2");
  LagrangeNodes nodes;
  nodes.degree = degree;
  nodes.count = mesh.vertex_count() + (degree == 2 ? mesh.face_count() : 0);
  return nodes;
}

Eigen::Vector2d LagrangeNodes::coordinate(const Mesh& mesh, int node) const {
  if (node < mesh.vertex_count()) return mesh.vertex(node);
  return mesh.face(node - mesh.vertex_count()).midpoint;
}

bool LagrangeNodes::on_boundary(const Mesh& mesh, int node) const {
  if (node < mesh.vertex_count()) return mesh.vertex_on_boundary(node);
  return mesh.face(node - mesh.vertex_count()).boundary();
}

ConformingField::ConformingField(int degree, Eigen::VectorXd node_values)
    : degree_(degree), values_(std::move(node_values)) {}

double ConformingField::value(const Mesh& mesh, int t, const Eigen::Vector2d& p) const {
  Eigen::Vector3d lam = barycentric(mesh, t, p);
  const auto& c = mesh.cell(t);
  if (degree_ == 1)
    return lam[0] * values_[c[0]] + lam[1] * values_[c[1]] + lam[2] * values_[c[2]];
  double out = 0.0;
  for (int i = 0; i < 3; ++i) out += values_[c[i]] * lam[i] * (2.0 * lam[i] - 1.0);
  for (int e = 0; e < 3; ++e) {
    int node = mesh.vertex_count() + mesh.cell_face(t, e);
    out += values_[node] * 4.0 * lam[(e + 1) % 3] * lam[(e + 2) % 3];
  }
  return out;
}

Eigen::Vector2d ConformingField::gradient(const Mesh& mesh, int t,
                                          const Eigen::Vector2d& p) const {
  Eigen::Vector3d lam = barycentric(mesh, t, p);
  Eigen::Matrix<double, 3, 2> dlam = barycentric_gradients(mesh, t);
  const auto& c = mesh.cell(t);
  Eigen::Vector2d out = Eigen::Vector2d::Zero();
  if (degree_ == 1) {
    for (int i = 0; i < 3; ++i) out += values_[c[i]] * dlam.row(i).transpose();
    return out;
  }
  for (int i = 0; i < 3; ++i)
    out += values_[c[i]] * (4.0 * lam[i] - 1.0) * dlam.row(i).transpose();
  for (int e = 0; e < 3; ++e) {
    int node = mesh.vertex_count() + mesh.cell_face(t, e);
    int i = (e + 1) % 3, j = (e + 2) % 3;
    out += values_[node] * 4.0 *
           (lam[i] * dlam.row(j).transpose() + lam[j] * dlam.row(i).transpose());
  }
  return out;
}

namespace {

template <typename ValueAt>
ConformingField average_nodes(const Mesh& mesh, int degree, const ScalarFn& boundary_values,
                              ValueAt&& value_at) {
  LagrangeNodes nodes = LagrangeNodes::create(mesh, degree);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(nodes.count);

  std::vector<std::vector<int>> vertex_cells(mesh.vertex_count());
  for (int t = 0; t < mesh.cell_count(); ++t)
    for (int i : mesh.cell(t)) vertex_cells[i].push_back(t);

  for (int node = 0; node < nodes.count; ++node) {
    Eigen::Vector2d p = nodes.coordinate(mesh, node);
    if (nodes.on_boundary(mesh, node)) {
      values[node] = boundary_values(p);
      continue;
    }
    double sum = 0.0;
    int card = 0;
    if (node < mesh.vertex_count()) {
      for (int t : vertex_cells[node]) {
        sum += value_at(t, p);
        ++card;
      }
    } else {
      const Face& fc = mesh.face(node - mesh.vertex_count());
      for (int t : fc.cell)
        if (t >= 0) {
          sum += value_at(t, p);
          ++card;
        }
    }
    values[node] = sum / card;
  }
  return ConformingField(degree, std::move(values));
}

}  // namespace

ConformingField node_average(const Mesh& mesh, const PiecewiseField& w,
                             const ScalarFn& boundary_values) {
  return average_nodes(mesh, w.degree(), boundary_values,
                       [&](int t, const Eigen::Vector2d& p) { return w.value(mesh, t, p); });
}

ConformingField node_average(const Mesh& mesh, const ConformingField& w,
                             const ScalarFn& boundary_values) {
  return average_nodes(mesh, w.degree(), boundary_values,
                       [&](int t, const Eigen::Vector2d& p) { return w.value(mesh, t, p); });
}

ConformingField conforming_post(const Mesh& mesh, const DofMap& map,
                                const Eigen::VectorXd& u_full, const ScalarFn& g) {
  return node_average(mesh, reconstruct_field(mesh, map, u_full), g);
}

}  // namespace hho
