#pragma once

// Closed, consistently oriented triangle meshes and their P1 geometry.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "shapecalc/tensor.hpp"

namespace shapecalc {

using Triangle = std::array<int, 3>;

class TriMesh {
public:
    /// Validates closedness, orientation, manifoldness and triangle areas.
    TriMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_triangles() const { return triangles_.size(); }
    const Vec3& vertex(int i) const { return vertices_[i]; }
    const Triangle& triangle(int t) const { return triangles_[t]; }

    /// Largest vertex distance from the vertex centroid.
    double scale() const { return scale_; }
    /// Sorted neighbour lists.
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

    double triangle_area(int t) const;
    Vec3 triangle_normal(int t) const;
    Vec3 barycenter(int t) const;

    /// Same connectivity with new positions (revalidated).
    TriMesh with_vertices(std::vector<Vec3> vertices) const;

private:
    std::vector<Vec3> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<std::vector<int>> adjacency_;
    double scale_ = 1.0;
};

/// Local geometry at a quadrature point: location, unit normal, shape
/// operator and quadrature weight.
struct LocalGeometry {
    Vec3 point;
    Vec3 normal;
    Mat3 shape;
    double weight = 0.0;
};

/// Gradients of the three P1 hat functions of triangle t (tangent to t).
std::array<Vec3, 3> triangle_gradients(const TriMesh& mesh, int t);

/// P1 tangential gradient of vertex values on triangle t.
Vec3 triangle_gradient(const TriMesh& mesh, int t, const std::vector<double>& values);

/// Normalised vertex normals with corner weights (e1 × e2)/(|e1|²|e2|²),
/// exact for vertices on a common sphere.
std::vector<Vec3> vertex_normals(const TriMesh& mesh);

/// Lumped (one third of incident triangle areas) vertex areas.
std::vector<double> vertex_areas(const TriMesh& mesh);

/// sym(P_T D(Σ n_i φ_i) P_T) on triangle t for unit vertex normals n_i.
Mat3 mesh_shape_operator(const TriMesh& mesh, int t, const std::vector<Vec3>& normals);

/// One node per triangle at its barycentre, weight = area.
std::vector<LocalGeometry> mesh_quadrature(const TriMesh& mesh);

double mesh_area(const TriMesh& mesh);
/// (1/3) Σ_T area_T x_T · n_T
double mesh_volume(const TriMesh& mesh);

/// Subdivided icosahedron projected on a sphere.
TriMesh make_icosphere(int subdivisions, double radius = 1.0, const Vec3& center = Vec3::Zero());

/// Moves every vertex radially (about center) by a factor 1 + amplitude·U(-1,1).
TriMesh jitter_radially(const TriMesh& mesh, double amplitude, std::uint64_t seed,
                        const Vec3& center = Vec3::Zero());

/// Structured nu × nv triangulation of the torus (R, r) about the z axis.
TriMesh make_torus_mesh(double major, double minor, int nu, int nv, const Vec3& center = Vec3::Zero());

}  // namespace shapecalc
