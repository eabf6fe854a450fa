#include "hho/mesh_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hho {

nlohmann::json mesh_to_json(const Mesh& mesh) {
  nlohmann::json doc;
  auto& verts = doc["vertices"] = nlohmann::json::array();
  for (int i = 0; i < mesh.vertex_count(); ++i)
    verts.push_back({mesh.vertex(i).x(), mesh.vertex(i).y()});
  auto& cells = doc["cells"] = nlohmann::json::array();
  auto& redge = doc["refinement_edge"] = nlohmann::json::array();
  for (int t = 0; t < mesh.cell_count(); ++t) {
    const auto& c = mesh.cell(t);
    cells.push_back({c[0], c[1], c[2]});
    redge.push_back(mesh.refinement_edge(t));
  }
  auto& bdry = doc["boundary_faces"] = nlohmann::json::array();
  for (int f : mesh.boundary_faces()) {
    const auto& fv = mesh.face(f).v;
    bdry.push_back({fv[0], fv[1]});
  }
  return doc;
}

Mesh mesh_from_json(const nlohmann::json& doc) {
  std::vector<Eigen::Vector2d> vertices;
  for (const auto& v : doc.at("vertices"))
    vertices.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
  std::vector<std::array<int, 3>> cells;
  for (const auto& c : doc.at("cells"))
    cells.push_back({c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<int>()});
  std::vector<int> tags;
  if (doc.contains("refinement_edge"))
    for (const auto& e : doc.at("refinement_edge")) tags.push_back(e.get<int>());
  return build_mesh(std::move(vertices), std::move(cells), nullptr, std::move(tags));
}

void export_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_mesh: cannot open " + path);
  out << mesh_to_json(mesh).dump(2) << "\n";
}

Mesh import_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("import_mesh: cannot open " + path);
  nlohmann::json doc;
  in >> doc;
  return mesh_from_json(doc);
}

}  // namespace hho
