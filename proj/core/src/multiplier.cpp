#include "hho/multiplier.hpp"

#include "hho/basis.hpp"

namespace hho {

Multiplier compute_multiplier(const Mesh& mesh, const DofMap& map,
                              const GlobalSystem& system, const Eigen::VectorXd& u_full) {
  Multiplier mult;
  Eigen::VectorXd residual = system.F - system.A * u_full;

  mult.sigma_cell.resize(map.n_cells);
  for (int t = 0; t < map.n_cells; ++t)
    mult.sigma_cell[t] = residual[map.cell_dof(t)] / mesh.cell_area(t);

  mult.sigma_face.resize(map.n_faces, map.k + 1);
  for (int f = 0; f < map.n_faces; ++f) {
    Eigen::MatrixXd mass = FaceBasis(mesh, f, map.k).mass();
    for (int j = 0; j <= map.k; ++j)
      mult.sigma_face(f, j) = residual[map.face_dof(f, j)] / mass(j, j);
  }
  return mult;
}

}  // namespace hho
