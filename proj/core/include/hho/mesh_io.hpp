#pragma once

#include "hho/mesh.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace hho {

/// Document layout: {"vertices": [[x,y],...], "cells": [[i,j,k],...],
/// "refinement_edge": [e,...], "boundary_faces": [[i,j],...]}.
nlohmann::json mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const nlohmann::json& doc);

void export_mesh(const Mesh& mesh, const std::string& path);
Mesh import_mesh(const std::string& path);

}  // namespace hho
