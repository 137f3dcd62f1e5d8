#include "shapecalc/fem.hpp"

#include "shapecalc/errors.hpp"
#include "shapecalc/kernels.hpp"

namespace shapecalc {

namespace {

template <class Body>
void for_triangles(long n, bool parallel, Body&& body) {
    if (parallel) {
        parallel_for(n, body);
    } else {
        for (long t = 0; t < n; ++t) body(t);
    }
}

}  // namespace

SparseMatrix assemble(const TriMesh& mesh, const std::function<Eigen::Matrix3d(int)>& local, bool parallel) {
    const long nt = static_cast<long>(mesh.num_triangles());
    std::vector<Eigen::Matrix3d> blocks(nt);
    for_triangles(nt, parallel, [&](long t) { blocks[t] = local(static_cast<int>(t)); });
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(9 * nt);
    for (long t = 0; t < nt; ++t) {
        const Triangle& tri = mesh.triangle(static_cast<int>(t));
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) trip.emplace_back(tri[a], tri[b], blocks[t](a, b));
    }
    const int n = static_cast<int>(mesh.num_vertices());
    SparseMatrix m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SparseMatrix weighted_mass(const SurfaceFemSpace& fem, const std::vector<double>& w, bool parallel) {
    return assemble(
        fem.mesh,
        [&](int t) {
            Eigen::Matrix3d m = Eigen::Matrix3d::Constant(1.0);
            m.diagonal().setConstant(2.0);
            return Eigen::Matrix3d(m * (w[t] * fem.area[t] / 12.0));
        },
        parallel);
}

SparseMatrix weighted_stiffness(const SurfaceFemSpace& fem, const std::vector<Mat3>& c, bool parallel) {
    return assemble(
        fem.mesh,
        [&](int t) {
            Eigen::Matrix3d m;
            const auto& g = fem.grads[t];
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) m(a, b) = fem.area[t] * g[a].dot(c[t] * g[b]);
            return m;
        },
        parallel);
}

std::vector<double> recover_to_vertices(const SurfaceFemSpace& fem, const std::vector<double>& per_triangle) {
    std::vector<double> out(fem.dof(), 0.0);
    for (int t = 0; t < static_cast<int>(fem.mesh.num_triangles()); ++t)
        for (int v : fem.mesh.triangle(t)) out[v] += per_triangle[t] * fem.area[t] / 3.0;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] /= fem.lumped[i];
    return out;
}

std::array<SparseMatrix, 3> recovered_gradient_operators(const SurfaceFemSpace& fem) {
    const int n = static_cast<int>(fem.dof());
    std::array<std::vector<Eigen::Triplet<double>>, 3> trip;
    for (int t = 0; t < static_cast<int>(fem.mesh.num_triangles()); ++t) {
        const Triangle& tri = fem.mesh.triangle(t);
        for (int a = 0; a < 3; ++a) {
            const double w = fem.area[t] / (3.0 * fem.lumped[tri[a]]);
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) trip[c].emplace_back(tri[a], tri[b], w * fem.grads[t][b][c]);
        }
    }
    std::array<SparseMatrix, 3> g;
    for (int c = 0; c < 3; ++c) {
        g[c].resize(n, n);
        g[c].setFromTriplets(trip[c].begin(), trip[c].end());
    }
    return g;
}

SurfaceFemSpace build_fem_space(const TriMesh& mesh, const FemOptions& opt) {
    SurfaceFemSpace fem{mesh, vertex_normals(mesh), vertex_areas(mesh), {}, {}, {}, {}, {}, {}, {}};
    const long nt = static_cast<long>(mesh.num_triangles());
    fem.area.resize(nt);
    fem.grads.resize(nt);
    fem.curvature.resize(nt);
    for_triangles(nt, opt.parallel, [&](long t) {
        const int ti = static_cast<int>(t);
        fem.area[t] = mesh.triangle_area(ti);
        fem.grads[t] = triangle_gradients(mesh, ti);
        TriangleCurvature& c = fem.curvature[t];
        if (opt.exact_curvature) {
            const SurfacePoint sp = opt.exact_curvature->at(opt.exact_curvature->project(mesh.barycenter(ti)));
            const Mat3 p = tangential_projector<3>(mesh.triangle_normal(ti));
            c.shape = sym<3>(Mat3(p * sp.shape * p));
        } else {
            c.shape = mesh_shape_operator(mesh, ti, fem.normals);
        }
        c.kappa = c.shape.trace();
        const Mat3 s2 = c.shape * c.shape;
        c.I2 = s2.trace();
        c.I3 = (s2 * c.shape).trace();
        c.i2 = 0.5 * (c.kappa * c.kappa - c.I2);
    });
    std::vector<double> k(nt), i2(nt);
    for (long t = 0; t < nt; ++t) {
        k[t] = fem.curvature[t].kappa;
        i2[t] = fem.curvature[t].I2;
    }
    fem.kappa_vertex = recover_to_vertices(fem, k);
    fem.I2_vertex = recover_to_vertices(fem, i2);
    for (long t = 0; t < nt; ++t)
        fem.curvature[t].grad_kappa = triangle_gradient(mesh, static_cast<int>(t), fem.kappa_vertex);

    fem.mass = weighted_mass(fem, std::vector<double>(nt, 1.0), opt.parallel);
    fem.stiffness = weighted_stiffness(fem, std::vector<Mat3>(nt, Mat3::Identity()), opt.parallel);
    return fem;
}

}  // namespace shapecalc
