#pragma once

#include "hho/mesh.hpp"

#include <vector>

namespace hho {

/// Global dof layout: one dof per cell (dof t = t), then k+1 consecutive dofs
/// per face starting at n_cells + f*(k+1). Face dofs of boundary faces carry
/// Dirichlet data; every cell dof is an unknown.
struct DofMap {
  int n_cells = 0;
  int n_faces = 0;
  int k = 0;

  int total() const { return n_cells + n_faces * (k + 1); }
  int cell_dof(int t) const { return t; }
  int face_dof(int f, int j = 0) const { return n_cells + f * (k + 1) + j; }
  bool is_face_dof(int dof) const { return dof >= n_cells; }
  int face_of_dof(int dof) const { return (dof - n_cells) / (k + 1); }

  std::vector<char> dirichlet;  // per dof, 1 on boundary-face dofs
  int free_count = 0;
};

DofMap build_dof_map(const Mesh& mesh, int k);

}  // namespace hho
