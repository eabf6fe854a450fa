#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace hho {

/// Per-face connectivity and geometry. Faces are the mesh edges; `cell[1]` is
/// -1 on the boundary. The unit normal points from the lower-indexed adjacent
/// cell to the higher-indexed one, outward on the boundary.
struct Face {
  std::array<int, 2> v{-1, -1};
  std::array<int, 2> cell{-1, -1};
  double length = 0.0;
  Eigen::Vector2d normal = Eigen::Vector2d::Zero();
  Eigen::Vector2d midpoint = Eigen::Vector2d::Zero();
  Eigen::Vector2d tangent = Eigen::Vector2d::Zero();

  bool boundary() const { return cell[1] < 0; }
};

/// Diagnostics filled by build_mesh.
struct BuildReport {
  std::vector<int> reoriented_cells;
};

/// Immutable conforming 2D triangulation.
///
/// Cells store counterclockwise vertex triples plus a refinement-edge tag:
/// the index of the local edge opposite the newest vertex, where local edge i
/// is the edge opposite local vertex i. Refinement returns a new mesh and
/// records, per child cell, the index of its parent in the source mesh.
class Mesh {
 public:
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const Eigen::Vector2d& vertex(int i) const { return vertices_[i]; }
  const std::array<int, 3>& cell(int t) const { return cells_[t]; }
  int refinement_edge(int t) const { return refinement_edge_[t]; }
  double cell_area(int t) const { return area_[t]; }
  double cell_diameter(int t) const { return diameter_[t]; }
  Eigen::Vector2d cell_centroid(int t) const {
    const auto& c = cells_[t];
    return (vertices_[c[0]] + vertices_[c[1]] + vertices_[c[2]]) / 3.0;
  }
  /// Face index of local edge e of cell t (edge e is opposite vertex e).
  int cell_face(int t, int e) const { return cell_faces_[t][e]; }
  const std::array<int, 3>& cell_faces(int t) const { return cell_faces_[t]; }

  const Face& face(int f) const { return faces_[f]; }
  /// n_TF: unit normal of local edge e, oriented outward from cell t.
  Eigen::Vector2d outward_normal(int t, int e) const {
    const Face& fc = faces_[cell_faces_[t][e]];
    return fc.cell[0] == t ? fc.normal : Eigen::Vector2d(-fc.normal);
  }
  bool vertex_on_boundary(int i) const { return vertex_on_boundary_[i] != 0; }

  /// Parent cell in the mesh this one was refined from; t itself on a mesh
  /// built directly from vertex/cell arrays.
  int parent_cell(int t) const { return parent_cell_[t]; }

  std::vector<int> boundary_faces() const;
  double total_area() const;
  double min_angle() const;
  double max_diameter() const;

  friend Mesh build_mesh(std::vector<Eigen::Vector2d> vertices,
                         std::vector<std::array<int, 3>> cells, BuildReport* report,
                         std::vector<int> refinement_edges);
  friend Mesh refine_nvb(const Mesh& mesh, const std::vector<int>& marked);
  friend Mesh uniform_refine(const Mesh& mesh);

 private:
  void derive_connectivity();

  std::vector<Eigen::Vector2d> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<int> refinement_edge_;
  std::vector<int> parent_cell_;
  std::vector<Face> faces_;
  std::vector<std::array<int, 3>> cell_faces_;
  std::vector<double> area_;
  std::vector<double> diameter_;
  std::vector<char> vertex_on_boundary_;
};

/// Builds a conforming mesh from raw vertex/cell arrays. Refinement edges are
/// initialized to each cell's longest edge, ties broken by the smallest
/// opposite-vertex index, unless explicit tags are supplied (mesh import).
/// Clockwise cells are repaired by a vertex swap and reported; duplicate
/// cells and non-manifold edges are rejected.
Mesh build_mesh(std::vector<Eigen::Vector2d> vertices,
                std::vector<std::array<int, 3>> cells, BuildReport* report = nullptr,
                std::vector<int> refinement_edges = {});

/// Newest-vertex bisection of the marked cells plus conformity closure.
Mesh refine_nvb(const Mesh& mesh, const std::vector<int>& marked);

/// Two all-marked NVB passes; each parent is split into at least 4 children.
Mesh uniform_refine(const Mesh& mesh);

struct MeshQuality {
  double min_angle = 0.0;
  double max_diameter = 0.0;
  int cell_count = 0;
};

MeshQuality mesh_quality(const Mesh& mesh);

}  // namespace hho
