#pragma once

// P1 surface finite elements on closed triangle meshes.

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Sparse>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/mesh.hpp"

namespace shapecalc {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Per-triangle curvature data (constant on each triangle).
struct TriangleCurvature {
    Mat3 shape = Mat3::Zero();
    double kappa = 0.0;
    double I2 = 0.0;   // |S|²
    double I3 = 0.0;   // tr S³
    double i2 = 0.0;   // κ_g
    Vec3 grad_kappa = Vec3::Zero();  // gradient of the vertex-recovered κ
};

struct FemOptions {
    /// When set, curvature comes from this surface at the projected barycentre
    /// instead of the mesh shape operator.
    const AnalyticSurface* exact_curvature = nullptr;
    /// Use OpenMP for per-triangle work (results are identical either way).
    bool parallel = true;
};

struct SurfaceFemSpace {
    TriMesh mesh;
    std::vector<Vec3> normals;                 // vertex_normals(mesh)
    std::vector<double> lumped;                // lumped vertex areas
    std::vector<double> area;                  // triangle areas
    std::vector<std::array<Vec3, 3>> grads;    // P1 basis gradients
    std::vector<TriangleCurvature> curvature;
    std::vector<double> kappa_vertex;          // lumped L² recovery of κ
    std::vector<double> I2_vertex;             // lumped L² recovery of |S|²
    SparseMatrix mass;                         // ∫ φ_i φ_j
    SparseMatrix stiffness;                    // ∫ ∇φ_i · ∇φ_j

    std::size_t dof() const { return mesh.num_vertices(); }
};

SurfaceFemSpace build_fem_space(const TriMesh& mesh, const FemOptions& opt = {});

/// Σ_T over local 3 × 3 blocks produced by local(t); blocks are computed in
/// parallel and summed in triangle order.
SparseMatrix assemble(const TriMesh& mesh, const std::function<Eigen::Matrix3d(int)>& local, bool parallel = true);

/// ∫ w φ_i φ_j with w constant per triangle.
SparseMatrix weighted_mass(const SurfaceFemSpace& fem, const std::vector<double>& w, bool parallel = true);

/// ∫ ∇φ_i · C_T ∇φ_j with a constant tensor per triangle.
SparseMatrix weighted_stiffness(const SurfaceFemSpace& fem, const std::vector<Mat3>& c, bool parallel = true);

/// Lumped L² projection of per-triangle values to vertices.
std::vector<double> recover_to_vertices(const SurfaceFemSpace& fem, const std::vector<double>& per_triangle);

/// Lumped L² projection of the P1 gradient to vertices: one operator per
/// ambient component.
std::array<SparseMatrix, 3> recovered_gradient_operators(const SurfaceFemSpace& fem);

}  // namespace shapecalc
