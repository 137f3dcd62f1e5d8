#pragma once

#include <iosfwd>
#include <string>

#include "shapecalc/mesh.hpp"

namespace shapecalc {

enum class MeshFormat { off, obj };

/// Format from the file extension (.off or .obj, case-insensitive).
MeshFormat mesh_format_from_path(const std::string& path);

TriMesh read_mesh(std::istream& in, MeshFormat format);
TriMesh read_mesh(const std::string& path, MeshFormat format);
TriMesh read_mesh(const std::string& path);

/// Coordinates are written with 17 significant digits.
void write_mesh(const TriMesh& mesh, std::ostream& out, MeshFormat format);
void write_mesh(const TriMesh& mesh, const std::string& path, MeshFormat format);
void write_mesh(const TriMesh& mesh, const std::string& path);

}  // namespace shapecalc
