#include "hho/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace hho {

namespace {

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                   const Eigen::Vector2d& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

std::array<int, 3> sorted_triple(const std::array<int, 3>& c) {
  std::array<int, 3> s = c;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

std::vector<int> Mesh::boundary_faces() const {
  std::vector<int> out;
  for (int f = 0; f < face_count(); ++f)
    if (faces_[f].boundary()) out.push_back(f);
  return out;
}

double Mesh::total_area() const {
  double s = 0.0;
  for (double a : area_) s += a;
  return s;
}

double Mesh::min_angle() const {
  double amin = M_PI;
  for (int t = 0; t < cell_count(); ++t) {
    const auto& c = cells_[t];
    for (int i = 0; i < 3; ++i) {
      Eigen::Vector2d u = vertices_[c[(i + 1) % 3]] - vertices_[c[i]];
      Eigen::Vector2d v = vertices_[c[(i + 2) % 3]] - vertices_[c[i]];
      double ang = std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
      amin = std::min(amin, ang);
    }
  }
  return amin;
}

double Mesh::max_diameter() const {
  double h = 0.0;
  for (double d : diameter_) h = std::max(h, d);
  return h;
}

void Mesh::derive_connectivity() {
  const int nc = cell_count();
  faces_.clear();
  cell_faces_.assign(nc, {-1, -1, -1});
  area_.assign(nc, 0.0);
  diameter_.assign(nc, 0.0);

  // Faces are numbered in order of first appearance, scanning cells in
  // ascending index and local edges 0,1,2 (edge e opposite vertex e).
  std::map<std::pair<int, int>, int> edge_index;
  for (int t = 0; t < nc; ++t) {
    const auto& c = cells_[t];
    for (int e = 0; e < 3; ++e) {
      int a = c[(e + 1) % 3], b = c[(e + 2) % 3];
      std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        Face fc;
        fc.v = {a, b};
        fc.cell = {t, -1};
        it = edge_index.emplace(key, static_cast<int>(faces_.size())).first;
        faces_.push_back(fc);
      } else {
        Face& fc = faces_[it->second];
        if (fc.cell[1] >= 0)
          throw std::invalid_argument("mesh: non-manifold edge (" + std::to_string(key.first) +
                                      "," + std::to_string(key.second) +
                                      ") shared by more than two cells");
        fc.cell[1] = t;
      }
      cell_faces_[t][e] = it->second;
    }
  }

  for (int t = 0; t < nc; ++t) {
    const auto& c = cells_[t];
    area_[t] = signed_area(vertices_[c[0]], vertices_[c[1]], vertices_[c[2]]);
    if (area_[t] <= 0.0)
      throw std::invalid_argument("mesh: cell " + std::to_string(t) +
                                  " has non-positive area after orientation repair");
    double d = 0.0;
    for (int e = 0; e < 3; ++e)
      d = std::max(d, (vertices_[c[(e + 1) % 3]] - vertices_[c[(e + 2) % 3]]).norm());
    diameter_[t] = d;
  }

  vertex_on_boundary_.assign(vertex_count(), 0);
  for (Face& fc : faces_) {
    const Eigen::Vector2d& a = vertices_[fc.v[0]];
    const Eigen::Vector2d& b = vertices_[fc.v[1]];
    fc.length = (b - a).norm();
    fc.midpoint = 0.5 * (a + b);
    fc.tangent = (b - a) / fc.length;
    // Normal from the lower-indexed adjacent cell to the other (cell[0] is the
    // first cell encountered, i.e. the lower index); outward on the boundary.
    Eigen::Vector2d n(fc.tangent.y(), -fc.tangent.x());
    Eigen::Vector2d to_face = fc.midpoint - cell_centroid(fc.cell[0]);
    if (n.dot(to_face) < 0.0) n = -n;
    fc.normal = n;
    if (fc.boundary()) {
      vertex_on_boundary_[fc.v[0]] = 1;
      vertex_on_boundary_[fc.v[1]] = 1;
    }
  }
}

Mesh build_mesh(std::vector<Eigen::Vector2d> vertices,
                std::vector<std::array<int, 3>> cells, BuildReport* report,
                std::vector<int> refinement_edges) {
  Mesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.cells_ = std::move(cells);

  const int nv = mesh.vertex_count();
  std::set<std::array<int, 3>> seen;
  for (int t = 0; t < mesh.cell_count(); ++t) {
    auto& c = mesh.cells_[t];
    for (int i : c)
      if (i < 0 || i >= nv)
        throw std::invalid_argument("mesh: cell " + std::to_string(t) +
                                    " references invalid vertex " + std::to_string(i));
    if (!seen.insert(sorted_triple(c)).second)
      throw std::invalid_argument("mesh: duplicate cell " + std::to_string(t));
    if (signed_area(mesh.vertices_[c[0]], mesh.vertices_[c[1]], mesh.vertices_[c[2]]) < 0.0) {
      std::swap(c[1], c[2]);
      // Swapping vertices 1 and 2 exchanges local edges 1 and 2.
      if (!refinement_edges.empty() && refinement_edges[t] > 0)
        refinement_edges[t] = 3 - refinement_edges[t];
      if (report) report->reoriented_cells.push_back(t);
    }
  }

  mesh.parent_cell_.resize(mesh.cell_count());
  for (int t = 0; t < mesh.cell_count(); ++t) mesh.parent_cell_[t] = t;

  if (!refinement_edges.empty()) {
    if (refinement_edges.size() != static_cast<size_t>(mesh.cell_count()))
      throw std::invalid_argument("mesh: refinement_edges length mismatch");
    for (int e : refinement_edges)
      if (e < 0 || e > 2) throw std::invalid_argument("mesh: refinement edge tag out of range");
    mesh.refinement_edge_ = std::move(refinement_edges);
  } else {
    // Longest edge, ties broken by the smallest index of the opposite vertex.
    mesh.refinement_edge_.assign(mesh.cell_count(), 0);
    for (int t = 0; t < mesh.cell_count(); ++t) {
      const auto& c = mesh.cells_[t];
      int best = 0;
      double best_len = -1.0;
      for (int e = 0; e < 3; ++e) {
        double len = (mesh.vertices_[c[(e + 1) % 3]] - mesh.vertices_[c[(e + 2) % 3]]).norm();
        if (len > best_len || (len == best_len && c[e] < c[best])) {
          best = e;
          best_len = len;
        }
      }
      mesh.refinement_edge_[t] = best;
    }
  }

  mesh.derive_connectivity();
  return mesh;
}

Mesh refine_nvb(const Mesh& mesh, const std::vector<int>& marked) {
  const int nc = mesh.cell_count();
  for (int t : marked)
    if (t < 0 || t >= nc)
      throw std::invalid_argument("refine_nvb: invalid cell index " + std::to_string(t));

  // Closure at the level of edges: an edge set S, initialized with the
  // refinement edges of the marked cells, grown until every cell touching S
  // has its own refinement edge in S.
  std::vector<char> split(mesh.face_count(), 0);
  for (int t : marked) split[mesh.cell_face(t, mesh.refinement_edge(t))] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int t = 0; t < nc; ++t) {
      int ref_face = mesh.cell_face(t, mesh.refinement_edge(t));
      if (split[ref_face]) continue;
      const auto& cf = mesh.cell_faces(t);
      if (split[cf[0]] || split[cf[1]] || split[cf[2]]) {
        split[ref_face] = 1;
        changed = true;
      }
    }
  }

  Mesh out;
  out.vertices_.assign(mesh.vertices_.begin(), mesh.vertices_.end());

  // Midpoint vertices for the split edges, appended in ascending face index.
  std::vector<int> midpoint(mesh.face_count(), -1);
  for (int f = 0; f < mesh.face_count(); ++f) {
    if (!split[f]) continue;
    midpoint[f] = static_cast<int>(out.vertices_.size());
    out.vertices_.push_back(mesh.face(f).midpoint);
  }

  // Bisect recursively. A child's refinement edge is one of the parent's
  // original edges, so at most two generations are needed per cell.
  struct Tri {
    std::array<int, 3> v;
    int ref;
  };
  // Map vertex pair -> source face index for lookup of original edges;
  // half-edges created during bisection are never found here.
  std::map<std::pair<int, int>, int> source_edge;
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& fv = mesh.face(f).v;
    source_edge[{std::min(fv[0], fv[1]), std::max(fv[0], fv[1])}] = f;
  }
  auto needs_split = [&](int a, int b) -> int {
    auto it = source_edge.find({std::min(a, b), std::max(a, b)});
    if (it == source_edge.end()) return -1;
    return split[it->second] ? it->second : -1;
  };

  auto emit = [&](int parent, const Tri& tri, auto&& self) -> void {
    int p = tri.v[tri.ref];
    int a = tri.v[(tri.ref + 1) % 3];
    int b = tri.v[(tri.ref + 2) % 3];
    int fe = needs_split(a, b);
    if (fe < 0) {
      out.cells_.push_back(tri.v);
      out.refinement_edge_.push_back(tri.ref);
      out.parent_cell_.push_back(parent);
      return;
    }
    int m = midpoint[fe];
    // Children (p, a, m) and (p, m, b): counterclockwise, newest vertex m,
    // refinement edges opposite m (the old peak-to-endpoint edges).
    self(parent, Tri{{p, a, m}, 2}, self);
    self(parent, Tri{{p, m, b}, 1}, self);
  };

  for (int t = 0; t < nc; ++t)
    emit(t, Tri{mesh.cell(t), mesh.refinement_edge(t)}, emit);

  out.derive_connectivity();
  return out;
}

Mesh uniform_refine(const Mesh& mesh) {
  std::vector<int> all(mesh.cell_count());
  for (int t = 0; t < mesh.cell_count(); ++t) all[t] = t;
  Mesh once = refine_nvb(mesh, all);
  std::vector<int> all2(once.cell_count());
  for (int t = 0; t < once.cell_count(); ++t) all2[t] = t;
  Mesh twice = refine_nvb(once, all2);
  // Collapse the two-step provenance so parent_cell points into `mesh`.
  for (auto& p : twice.parent_cell_) p = once.parent_cell(p);
  return twice;
}

MeshQuality mesh_quality(const Mesh& mesh) {
  return MeshQuality{mesh.min_angle(), mesh.max_diameter(), mesh.cell_count()};
}

}  // namespace hho
