#include "shapecalc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include "shapecalc/errors.hpp"
#include "shapecalc/kernels.hpp"
#include "shapecalc/random.hpp"

namespace shapecalc {

namespace {

std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

TriMesh::TriMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
    const int nv = static_cast<int>(vertices_.size());
    if (nv == 0 || triangles_.empty()) throw MeshError("mesh is empty");
    for (const Vec3& v : vertices_)
        if (!v.allFinite()) throw MeshError("mesh has a non-finite vertex");

    Vec3 centroid = Vec3::Zero();
    for (const Vec3& v : vertices_) centroid += v;
    centroid /= nv;
    scale_ = 0.0;
    for (const Vec3& v : vertices_) scale_ = std::max(scale_, (v - centroid).norm());
    if (!(scale_ > 0)) throw MeshError("mesh has zero extent");

    std::unordered_map<std::uint64_t, int> directed;
    directed.reserve(3 * triangles_.size());
    std::vector<int> incident(nv, 0);
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const Triangle& tri = triangles_[t];
        for (int k = 0; k < 3; ++k) {
            if (tri[k] < 0 || tri[k] >= nv) throw MeshError("triangle " + std::to_string(t) + " has a bad vertex index");
            ++incident[tri[k]];
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw MeshError("triangle " + std::to_string(t) + " repeats a vertex");
        for (int k = 0; k < 3; ++k)
            if (++directed[edge_key(tri[k], tri[(k + 1) % 3])] > 1)
                throw MeshError("edge used twice in the same direction: non-manifold or inconsistently oriented mesh");
    }
    for (const auto& [key, count] : directed) {
        const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
        if (!directed.count(edge_key(b, a))) throw MeshError("mesh is not closed: boundary edge found");
    }
    for (int v = 0; v < nv; ++v)
        if (incident[v] == 0) throw MeshError("vertex " + std::to_string(v) + " belongs to no triangle");

    // Each vertex link must be a single cycle.
    std::vector<std::map<int, int>> link(nv);
    for (const Triangle& tri : triangles_)
        for (int k = 0; k < 3; ++k) link[tri[k]][tri[(k + 1) % 3]] = tri[(k + 2) % 3];
    adjacency_.resize(nv);
    for (int v = 0; v < nv; ++v) {
        const auto& l = link[v];
        int start = l.begin()->first, cur = start, steps = 0;
        do {
            cur = l.at(cur);
            ++steps;
        } while (cur != start && steps <= static_cast<int>(l.size()));
        if (steps != static_cast<int>(l.size())) throw MeshError("vertex " + std::to_string(v) + " is non-manifold");
        for (const auto& [a, b] : l) adjacency_[v].push_back(a);
    }

    const double min_area = 1e-14 * scale_ * scale_;
    for (int t = 0; t < static_cast<int>(triangles_.size()); ++t)
        if (!(triangle_area(t) >= min_area)) throw MeshError("degenerate triangle " + std::to_string(t));
}

double TriMesh::triangle_area(int t) const {
    const Triangle& tri = triangles_[t];
    return 0.5 * (vertices_[tri[1]] - vertices_[tri[0]]).cross(vertices_[tri[2]] - vertices_[tri[0]]).norm();
}

Vec3 TriMesh::triangle_normal(int t) const {
    const Triangle& tri = triangles_[t];
    return (vertices_[tri[1]] - vertices_[tri[0]]).cross(vertices_[tri[2]] - vertices_[tri[0]]).normalized();
}

Vec3 TriMesh::barycenter(int t) const {
    const Triangle& tri = triangles_[t];
    return (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
}

TriMesh TriMesh::with_vertices(std::vector<Vec3> vertices) const {
    if (vertices.size() != vertices_.size()) throw MeshError("with_vertices: vertex count mismatch");
    return TriMesh(std::move(vertices), triangles_);
}

std::array<Vec3, 3> triangle_gradients(const TriMesh& mesh, int t) {
    const Triangle& tri = mesh.triangle(t);
    const Vec3& a = mesh.vertex(tri[0]);
    const Vec3& b = mesh.vertex(tri[1]);
    const Vec3& c = mesh.vertex(tri[2]);
    const Vec3 cr = (b - a).cross(c - a);
    const double twice_area = cr.norm();
    const Vec3 n = cr / twice_area;
    return {n.cross(c - b) / twice_area, n.cross(a - c) / twice_area, n.cross(b - a) / twice_area};
}

Vec3 triangle_gradient(const TriMesh& mesh, int t, const std::vector<double>& values) {
    const auto g = triangle_gradients(mesh, t);
    const Triangle& tri = mesh.triangle(t);
    return values[tri[0]] * g[0] + values[tri[1]] * g[1] + values[tri[2]] * g[2];
}

std::vector<Vec3> vertex_normals(const TriMesh& mesh) {
    // Triangles are visited in index order so the sums do not depend on threads.
    std::vector<Vec3> n(mesh.num_vertices(), Vec3::Zero());
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const Triangle& tri = mesh.triangle(t);
        for (int k = 0; k < 3; ++k) {
            const Vec3 a = mesh.vertex(tri[(k + 1) % 3]) - mesh.vertex(tri[k]);
            const Vec3 b = mesh.vertex(tri[(k + 2) % 3]) - mesh.vertex(tri[k]);
            n[tri[k]] += a.cross(b) / (a.squaredNorm() * b.squaredNorm());
        }
    }
    for (Vec3& v : n) v.normalize();
    return n;
}

std::vector<double> vertex_areas(const TriMesh& mesh) {
    std::vector<double> a(mesh.num_vertices(), 0.0);
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const double at = mesh.triangle_area(t) / 3.0;
        for (int v : mesh.triangle(t)) a[v] += at;
    }
    return a;
}

Mat3 mesh_shape_operator(const TriMesh& mesh, int t, const std::vector<Vec3>& normals) {
    const auto g = triangle_gradients(mesh, t);
    const Triangle& tri = mesh.triangle(t);
    Mat3 d = Mat3::Zero();
    for (int k = 0; k < 3; ++k) d += normals[tri[k]] * g[k].transpose();
    const Mat3 p = tangential_projector<3>(mesh.triangle_normal(t));
    return sym<3>(Mat3(p * d * p));
}

std::vector<LocalGeometry> mesh_quadrature(const TriMesh& mesh) {
    const std::vector<Vec3> normals = vertex_normals(mesh);
    std::vector<LocalGeometry> out(mesh.num_triangles());
    parallel_for(static_cast<long>(out.size()), [&](long t) {
        const int ti = static_cast<int>(t);
        out[t] = {mesh.barycenter(ti), mesh.triangle_normal(ti), mesh_shape_operator(mesh, ti, normals),
                  mesh.triangle_area(ti)};
    });
    return out;
}

double mesh_area(const TriMesh& mesh) {
    return blocked_sum(parallel_terms(static_cast<long>(mesh.num_triangles()),
                                      [&](long t) { return mesh.triangle_area(static_cast<int>(t)); }));
}

double mesh_volume(const TriMesh& mesh) {
    return blocked_sum(parallel_terms(static_cast<long>(mesh.num_triangles()), [&](long t) {
               const Triangle& tri = mesh.triangle(static_cast<int>(t));
               return mesh.vertex(tri[0]).dot(mesh.vertex(tri[1]).cross(mesh.vertex(tri[2])));
           })) /
           6.0;
}

TriMesh make_icosphere(int subdivisions, double radius, const Vec3& center) {
    if (subdivisions < 0) throw InvalidArgument("icosphere: subdivisions must be non-negative");
    if (!(radius > 0)) throw InvalidArgument("icosphere: radius must be positive");
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> v = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                           {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
    for (Vec3& x : v) x.normalize();
    std::vector<Triangle> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                               {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                               {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> mid;
        auto midpoint = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = mid.find(key);
            if (it != mid.end()) return it->second;
            v.push_back((v[a] + v[b]).normalized());
            const int id = static_cast<int>(v.size()) - 1;
            mid.emplace(key, id);
            return id;
        };
        std::vector<Triangle> g;
        g.reserve(4 * f.size());
        for (const Triangle& t : f) {
            const int a = midpoint(t[0], t[1]), b = midpoint(t[1], t[2]), c = midpoint(t[2], t[0]);
            g.push_back({t[0], a, c});
            g.push_back({t[1], b, a});
            g.push_back({t[2], c, b});
            g.push_back({a, b, c});
        }
        f = std::move(g);
    }
    for (Vec3& x : v) x = center + radius * x;
    return TriMesh(std::move(v), std::move(f));
}

TriMesh jitter_radially(const TriMesh& mesh, double amplitude, std::uint64_t seed, const Vec3& center) {
    SplitMix rng(seed);
    std::vector<Vec3> v = mesh.vertices();
    for (Vec3& x : v) x = center + (1.0 + amplitude * rng.uniform(-1.0, 1.0)) * (x - center);
    return mesh.with_vertices(std::move(v));
}

TriMesh make_torus_mesh(double major, double minor, int nu, int nv, const Vec3& center) {
    if (!(major > minor && minor > 0)) throw InvalidArgument("torus needs major > minor > 0");
    if (nu < 3 || nv < 3) throw InvalidArgument("torus mesh needs at least 3 x 3 cells");
    constexpr double two_pi = 2 * std::numbers::pi;
    std::vector<Vec3> v;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            const double u = two_pi * i / nu, w = two_pi * j / nv;
            const double rho = major + minor * std::cos(w);
            v.push_back(center + Vec3(rho * std::cos(u), rho * std::sin(u), minor * std::sin(w)));
        }
    auto id = [nu, nv](int i, int j) { return ((i + nu) % nu) * nv + (j + nv) % nv; };
    std::vector<Triangle> f;
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            f.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            f.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return TriMesh(std::move(v), std::move(f));
}

}  // namespace shapecalc
