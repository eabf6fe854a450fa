#include "hho/assembly.hpp"

#include <stdexcept>

namespace hho {

GlobalSystem assemble_global(const Mesh& mesh, const DofMap& map, const ScalarFn& f,
                             int data_quad_degree) {
  const int k = map.k;
  GlobalSystem sys;
  sys.A.resize(map.total(), map.total());
  sys.F = Eigen::VectorXd::Zero(map.total());

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(mesh.cell_count()) * local_dof_count(k) *
                   local_dof_count(k));
  std::vector<int> global(local_dof_count(k));
  for (int t = 0; t < mesh.cell_count(); ++t) {
    LocalOperators ops = local_stiffness(mesh, t, k);
    global[0] = map.cell_dof(t);
    for (int e = 0; e < 3; ++e)
      for (int j = 0; j <= k; ++j)
        global[local_face_offset(e, k) + j] = map.face_dof(mesh.cell_face(t, e), j);
    for (int i = 0; i < local_dof_count(k); ++i)
      for (int j = 0; j < local_dof_count(k); ++j)
        triplets.emplace_back(global[i], global[j], ops.A(i, j));
    sys.F[map.cell_dof(t)] = integrate_cell(mesh, t, data_quad_degree, f);
  }
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

ReducedSystem apply_boundary_data(const GlobalSystem& system, const DofMap& map,
                                  const Mesh& mesh, const ScalarFn& g,
                                  int data_quad_degree) {
  ReducedSystem red;
  red.n_cells = map.n_cells;
  red.fixed_values = Eigen::VectorXd::Zero(map.total());
  for (int f = 0; f < map.n_faces; ++f) {
    if (!mesh.face(f).boundary()) continue;
    Eigen::VectorXd coeffs = project_face(mesh, f, map.k, g, data_quad_degree);
    for (int j = 0; j <= map.k; ++j) red.fixed_values[map.face_dof(f, j)] = coeffs[j];
  }

  red.global_to_free.assign(map.total(), -1);
  for (int dof = 0; dof < map.total(); ++dof) {
    if (map.dirichlet[dof]) continue;
    red.global_to_free[dof] = static_cast<int>(red.free_to_global.size());
    red.free_to_global.push_back(dof);
  }

  const int n_free = static_cast<int>(red.free_to_global.size());
  Eigen::VectorXd lifted = system.F - system.A * red.fixed_values;
  red.b.resize(n_free);
  for (int i = 0; i < n_free; ++i) red.b[i] = lifted[red.free_to_global[i]];

  std::vector<Eigen::Triplet<double>> triplets;
  for (int col = 0; col < system.A.outerSize(); ++col) {
    int jc = red.global_to_free[col];
    if (jc < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.A, col); it; ++it) {
      int ir = red.global_to_free[it.row()];
      if (ir >= 0) triplets.emplace_back(ir, jc, it.value());
    }
  }
  red.A.resize(n_free, n_free);
  red.A.setFromTriplets(triplets.begin(), triplets.end());
  return red;
}

Eigen::VectorXd expand_solution(const ReducedSystem& reduced, const Eigen::VectorXd& u_free) {
  if (u_free.size() != static_cast<Eigen::Index>(reduced.free_to_global.size()))
    throw std::invalid_argument("expand_solution: size mismatch");
  Eigen::VectorXd full = reduced.fixed_values;
  for (size_t i = 0; i < reduced.free_to_global.size(); ++i)
    full[reduced.free_to_global[i]] = u_free[static_cast<Eigen::Index>(i)];
  return full;
}

std::vector<double> obstacle_averages(const Mesh& mesh, const ScalarFn& chi,
                                      int data_quad_degree) {
  std::vector<double> avg(mesh.cell_count());
  for (int t = 0; t < mesh.cell_count(); ++t)
    avg[t] = integrate_cell(mesh, t, data_quad_degree, chi) / mesh.cell_area(t);
  return avg;
}

}  // namespace hho
