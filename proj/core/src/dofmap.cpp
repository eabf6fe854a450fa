#include "hho/dofmap.hpp"

namespace hho {

DofMap build_dof_map(const Mesh& mesh, int k) {
  DofMap map;
  map.n_cells = mesh.cell_count();
  map.n_faces = mesh.face_count();
  map.k = k;
  map.dirichlet.assign(map.total(), 0);
  for (int f = 0; f < map.n_faces; ++f)
    if (mesh.face(f).boundary())
      for (int j = 0; j <= k; ++j) map.dirichlet[map.face_dof(f, j)] = 1;
  map.free_count = 0;
  for (char d : map.dirichlet)
    if (!d) ++map.free_count;
  return map;
}

}  // namespace hho
