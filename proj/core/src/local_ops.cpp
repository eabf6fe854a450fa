#include "hho/local_ops.hpp"

#include <stdexcept>

namespace hho {

namespace {

struct CellGeometry {
  Eigen::Vector2d v0, v1, v2;
  double jac;
};

CellGeometry cell_geometry(const Mesh& mesh, int t) {
  const auto& c = mesh.cell(t);
  return {mesh.vertex(c[0]), mesh.vertex(c[1]), mesh.vertex(c[2]), 2.0 * mesh.cell_area(t)};
}

Eigen::Vector2d map_point(const CellGeometry& g, const QuadRule& rule, int q) {
  return rule.bary(q, 0) * g.v0 + rule.bary(q, 1) * g.v1 + rule.bary(q, 2) * g.v2;
}

}  // namespace

Eigen::VectorXd interpolate_local(const Mesh& mesh, int t, int k, const ScalarFn& v,
                                  int quad_degree) {
  Eigen::VectorXd dofs(local_dof_count(k));
  dofs[0] = integrate_cell(mesh, t, quad_degree, v) / mesh.cell_area(t);
  for (int e = 0; e < 3; ++e) {
    Eigen::VectorXd pf = project_face(mesh, mesh.cell_face(t, e), k, v, quad_degree);
    dofs.segment(local_face_offset(e, k), k + 1) = pf;
  }
  return dofs;
}

Eigen::MatrixXd gradient_reconstruction(const Mesh& mesh, int t, int k) {
  if (!(mesh.cell_area(t) > 0.0))
    throw std::invalid_argument("gradient_reconstruction: degenerate cell");
  const int N = cell_basis_size(k + 1);
  const int ndof = local_dof_count(k);
  CellBasis basis(mesh, t, k + 1);
  CellGeometry geo = cell_geometry(mesh, t);

  // Stiffness of the reconstruction basis.
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd cell_means = Eigen::VectorXd::Zero(N);
  const QuadRule& crule = triangle_rule(2 * (k + 1));
  for (int q = 0; q < crule.size(); ++q) {
    Eigen::Vector2d p = map_point(geo, crule, q);
    auto dphi = basis.gradients(p);
    K += crule.weights[q] * geo.jac * dphi * dphi.transpose();
    cell_means += crule.weights[q] * geo.jac * basis.values(p);
  }

  // Right-hand side: row i tests q = phi_i against sum_F (v_F - v_T, grad q . n).
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, ndof);
  const EdgeRule& erule = edge_rule(2 * (k + 1));
  for (int e = 0; e < 3; ++e) {
    const int f = mesh.cell_face(t, e);
    const Face& fc = mesh.face(f);
    FaceBasis fb(mesh, f, k);
    Eigen::Vector2d n = mesh.outward_normal(t, e);
    Eigen::Vector2d a = mesh.vertex(fc.v[0]), b = mesh.vertex(fc.v[1]);
    for (int q = 0; q < erule.size(); ++q) {
      Eigen::Vector2d p = a + erule.points[q] * (b - a);
      double w = erule.weights[q] * fc.length;
      Eigen::VectorXd dphin = basis.gradients(p) * n;
      Eigen::VectorXd psi = fb.values(p);
      B.block(0, local_face_offset(e, k), N, k + 1) += w * dphin * psi.transpose();
      B.col(0) -= w * dphin;
    }
  }

  // The Neumann problem is singular by constants: solve on the complement of
  // the constant mode, then enforce the cell-mean constraint.
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(N, ndof);
  R.bottomRows(N - 1) =
      K.bottomRightCorner(N - 1, N - 1).ldlt().solve(B.bottomRows(N - 1));
  R.row(0) = -(cell_means.tail(N - 1).transpose() * R.bottomRows(N - 1)) / mesh.cell_area(t);
  R(0, 0) += 1.0;
  return R;
}

namespace {

// D maps local dofs to the face coefficients of pi^k_F(v_F - R v).
Eigen::MatrixXd face_mismatch_operator(const Mesh& mesh, int t, int e, int k,
                                       const Eigen::MatrixXd& R, const CellBasis& basis) {
  const int f = mesh.cell_face(t, e);
  const Face& fc = mesh.face(f);
  FaceBasis fb(mesh, f, k);
  Eigen::Vector2d a = mesh.vertex(fc.v[0]), b = mesh.vertex(fc.v[1]);

  // Trace moments int_F phi_j psi_l of the reconstruction basis.
  const EdgeRule& erule = edge_rule(2 * (k + 1));
  Eigen::MatrixXd trace = Eigen::MatrixXd::Zero(k + 1, basis.size());
  for (int q = 0; q < erule.size(); ++q) {
    Eigen::Vector2d p = a + erule.points[q] * (b - a);
    double w = erule.weights[q] * fc.length;
    trace += w * fb.values(p) * basis.values(p).transpose();
  }
  Eigen::MatrixXd mass = fb.mass();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(k + 1, local_dof_count(k));
  D.block(0, local_face_offset(e, k), k + 1, k + 1).setIdentity();
  Eigen::MatrixXd proj = trace * R;
  for (int l = 0; l <= k; ++l) D.row(l) -= proj.row(l) / mass(l, l);
  return D;
}

}  // namespace

Eigen::MatrixXd stabilization(const Mesh& mesh, int t, int k, const Eigen::MatrixXd& R) {
  const int ndof = local_dof_count(k);
  CellBasis basis(mesh, t, k + 1);
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(ndof, ndof);
  for (int e = 0; e < 3; ++e) {
    const int f = mesh.cell_face(t, e);
    Eigen::MatrixXd D = face_mismatch_operator(mesh, t, e, k, R, basis);
    S += D.transpose() * FaceBasis(mesh, f, k).mass() * D / mesh.face(f).length;
  }
  return S;
}

double stabilization_energy(const Mesh& mesh, int t, int k, const Eigen::MatrixXd& R,
                            const Eigen::VectorXd& v) {
  CellBasis basis(mesh, t, k + 1);
  double energy = 0.0;
  for (int e = 0; e < 3; ++e) {
    const int f = mesh.cell_face(t, e);
    Eigen::VectorXd mismatch = face_mismatch_operator(mesh, t, e, k, R, basis) * v;
    energy += mismatch.dot(FaceBasis(mesh, f, k).mass() * mismatch) / mesh.face(f).length;
  }
  return energy;
}

LocalOperators local_stiffness(const Mesh& mesh, int t, int k) {
  LocalOperators ops;
  ops.R = gradient_reconstruction(mesh, t, k);

  const int N = cell_basis_size(k + 1);
  CellBasis basis(mesh, t, k + 1);
  CellGeometry geo = cell_geometry(mesh, t);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(N, N);
  const QuadRule& crule = triangle_rule(2 * (k + 1));
  for (int q = 0; q < crule.size(); ++q) {
    Eigen::Vector2d p = map_point(geo, crule, q);
    auto dphi = basis.gradients(p);
    K += crule.weights[q] * geo.jac * dphi * dphi.transpose();
  }

  ops.G = ops.R.transpose() * K * ops.R;
  ops.S = stabilization(mesh, t, k, ops.R);
  ops.A = ops.G + ops.S;
  // Symmetrize away the roundoff asymmetry of the solve.
  ops.A = 0.5 * (ops.A + ops.A.transpose()).eval();
  return ops;
}

Eigen::MatrixXd local_seminorm_gram(const Mesh& mesh, int t, int k) {
  const int ndof = local_dof_count(k);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ndof, ndof);
  for (int e = 0; e < 3; ++e) {
    const int f = mesh.cell_face(t, e);
    FaceBasis fb(mesh, f, k);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k + 1, ndof);
    J.block(0, local_face_offset(e, k), k + 1, k + 1).setIdentity();
    J(0, 0) = -1.0;  // v_F - v_T; the face constant is the first mode
    H += J.transpose() * fb.mass() * J / mesh.face(f).length;
  }
  return H;
}

}  // namespace hho
