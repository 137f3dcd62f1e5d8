#include "shapecalc/newton.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include <Eigen/IterativeLinearSolvers>

#include "shapecalc/errors.hpp"
#include "shapecalc/mesh_io.hpp"

namespace shapecalc {

namespace {

std::vector<double> per_triangle(const SurfaceFemSpace& fem, double (*f)(const TriangleCurvature&)) {
    std::vector<double> out(fem.curvature.size());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = f(fem.curvature[t]);
    return out;
}

SparseMatrix diagonal(const std::vector<double>& d) {
    SparseMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t i = 0; i < d.size(); ++i) trip.emplace_back(static_cast<int>(i), static_cast<int>(i), d[i]);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

SparseMatrix area_form(const SurfaceFemSpace& fem, bool parallel) {
    const auto i2 = per_triangle(fem, [](const TriangleCurvature& c) { return 2.0 * c.i2; });
    return SparseMatrix(fem.stiffness + weighted_mass(fem, i2, parallel));
}

SparseMatrix willmore_form(const SurfaceFemSpace& fem, bool parallel) {
    const TriMesh& mesh = fem.mesh;
    const int n = static_cast<int>(fem.dof());

    // i₂κ² - 2κ²I₂ + 2κI₃
    const auto mass_w = per_triangle(fem, [](const TriangleCurvature& c) {
        const double k2 = c.kappa * c.kappa;
        return c.i2 * k2 - 2 * k2 * c.I2 + 2 * c.kappa * c.I3;
    });
    SparseMatrix b = weighted_mass(fem, mass_w, parallel);

    // -κ²∇u·∇v + 2κ∇u·S∇v
    std::vector<Mat3> coef(mesh.num_triangles());
    for (std::size_t t = 0; t < coef.size(); ++t) {
        const TriangleCurvature& c = fem.curvature[t];
        coef[t] = -c.kappa * c.kappa * Mat3::Identity() + 2 * c.kappa * c.shape;
    }
    b += weighted_stiffness(fem, coef, parallel);

    // (Δu + I₂u)(Δv + I₂v) with Δ ≈ -M_L⁻¹K at vertices
    std::vector<double> inv_lumped(n), k2v(n);
    for (int i = 0; i < n; ++i) {
        inv_lumped[i] = 1.0 / fem.lumped[i];
        k2v[i] = fem.kappa_vertex[i] * fem.kappa_vertex[i];
    }
    const SparseMatrix g = SparseMatrix(-(diagonal(inv_lumped) * fem.stiffness)) + diagonal(fem.I2_vertex);
    b += SparseMatrix(g.transpose() * diagonal(fem.lumped) * g);

    // -(3/2)κ²Δu v - κ² u Δv
    const SparseMatrix ck = diagonal(k2v) * fem.stiffness;
    b += 1.5 * ck;
    b += SparseMatrix(ck.transpose());

    // κ u ∇v·∇κ: row v_a, column u_b
    b += assemble(
        mesh,
        [&](int t) {
            const TriangleCurvature& c = fem.curvature[t];
            Eigen::Matrix3d m;
            for (int a = 0; a < 3; ++a) m.row(a).setConstant(c.kappa * fem.area[t] / 3.0 * fem.grads[t][a].dot(c.grad_kappa));
            return m;
        },
        parallel);

    // 2κ v D²u:S with D²u from the recovered vertex gradient
    const auto grad_ops = recovered_gradient_operators(fem);
    SparseMatrix hess(n, n);
    for (int comp = 0; comp < 3; ++comp) {
        const SparseMatrix r = assemble(
            mesh,
            [&](int t) {
                const TriangleCurvature& c = fem.curvature[t];
                Eigen::Matrix3d m;
                for (int k = 0; k < 3; ++k) {
                    const double s = (c.shape * fem.grads[t][k])[comp];
                    m.col(k).setConstant(2 * c.kappa * fem.area[t] / 3.0 * s);
                }
                return m;
            },
            parallel);
        hess += SparseMatrix(r * grad_ops[comp]);
    }
    b += hess;
    b += SparseMatrix(hess.transpose());
    return b;
}

}  // namespace

Vector assemble_rhs(BuiltinFunctional f, const SurfaceFemSpace& fem) {
    const int n = static_cast<int>(fem.dof());
    Vector r = Vector::Zero(n);
    switch (f) {
        case BuiltinFunctional::area:
            for (int t = 0; t < static_cast<int>(fem.mesh.num_triangles()); ++t)
                for (int v : fem.mesh.triangle(t)) r[v] -= fem.curvature[t].kappa * fem.area[t] / 3.0;
            return r;
        case BuiltinFunctional::willmore: {
            const Vector kv = Eigen::Map<const Vector>(fem.kappa_vertex.data(), n);
            r = -(fem.stiffness * kv);
            for (int t = 0; t < static_cast<int>(fem.mesh.num_triangles()); ++t) {
                const TriangleCurvature& c = fem.curvature[t];
                const double local = (c.kappa * c.I2 - 0.5 * c.kappa * c.kappa * c.kappa) * fem.area[t] / 3.0;
                for (int v : fem.mesh.triangle(t)) r[v] += local;
            }
            return r;
        }
        default:
            throw InvalidArgument("newton: only the area and willmore functionals have a second form");
    }
}

SparseMatrix assemble_second_form(BuiltinFunctional f, const SurfaceFemSpace& fem, double* skew_norm, bool parallel) {
    SparseMatrix b;
    switch (f) {
        case BuiltinFunctional::area: b = area_form(fem, parallel); break;
        case BuiltinFunctional::willmore: b = willmore_form(fem, parallel); break;
        default: throw InvalidArgument("newton: only the area and willmore functionals have a second form");
    }
    const SparseMatrix bt = b.transpose();
    if (skew_norm) *skew_norm = 0.5 * SparseMatrix(b - bt).norm();
    return SparseMatrix(0.5 * (b + bt));
}

double residual_norm(const SurfaceFemSpace& fem, const Vector& rhs) {
    double s = 0.0;
    for (int i = 0; i < rhs.size(); ++i) s += rhs[i] * rhs[i] / fem.lumped[i];
    return std::sqrt(s);
}

LinearSolve solve_update(const SparseMatrix& a, const SurfaceFemSpace& fem, const Vector& rhs,
                         std::optional<double> epsilon) {
    LinearSolve out;
    const int n = static_cast<int>(fem.dof());
    double trace_m = 0.0;
    for (int i = 0; i < n; ++i) trace_m += fem.mass.coeff(i, i);
    out.epsilon = epsilon ? *epsilon : 1e-8 * trace_m / n;
    if (out.epsilon < 0) throw InvalidArgument("newton: epsilon must be non-negative");
    const SparseMatrix shifted = a + out.epsilon * fem.mass;
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
    cg.setMaxIterations(10 * n);
    cg.setTolerance(1e-12);
    cg.compute(shifted);
    out.u = cg.solve(rhs);
    out.iterations = static_cast<int>(cg.iterations());
    out.error = cg.error();
    if (cg.info() != Eigen::Success || !out.u.allFinite())
        throw ConvergenceFailure("newton: conjugate gradient did not converge within " + std::to_string(10 * n) +
                                 " iterations");
    return out;
}

namespace {

bool inverted(const TriMesh& before, const std::vector<Vec3>& after) {
    const double min_area = 1e-14 * before.scale() * before.scale();
    for (int t = 0; t < static_cast<int>(before.num_triangles()); ++t) {
        const Triangle& tri = before.triangle(t);
        const Vec3 cr = (after[tri[1]] - after[tri[0]]).cross(after[tri[2]] - after[tri[0]]);
        if (0.5 * cr.norm() < min_area || cr.dot(before.triangle_normal(t)) <= 0) return true;
    }
    return false;
}

}  // namespace

NewtonStep newton_step(const TriMesh& mesh, const NewtonConfig& config, int iter) {
    if (!(config.alpha > 0 && config.alpha <= 1)) throw InvalidArgument("newton: alpha must lie in (0, 1]");
    const SurfaceFemSpace fem = build_fem_space(mesh, config.fem);
    const FunctionalSpec spec = make_functional(config.functional);
    NewtonStep step{mesh, {}, false};
    NewtonIteration& row = step.row;
    row.iter = iter;
    row.J = evaluate(spec, mesh);
    const Vector rhs = assemble_rhs(config.functional, fem);
    row.residual = residual_norm(fem, rhs);

    const SparseMatrix a = assemble_second_form(config.functional, fem, &row.skew_norm);
    const LinearSolve sol = solve_update(a, fem, rhs, config.epsilon);
    row.cg_iters = sol.iterations;
    row.cg_error = sol.error;
    row.epsilon = sol.epsilon;
    row.u_inf = sol.u.lpNorm<Eigen::Infinity>();
    row.u_l2 = std::sqrt(sol.u.dot(fem.mass * sol.u));

    double alpha = config.alpha;
    for (int attempt = 0; attempt <= config.max_halvings; ++attempt, alpha *= 0.5) {
        std::vector<Vec3> x = mesh.vertices();
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += alpha * sol.u[static_cast<int>(i)] * fem.normals[i];
        if (inverted(mesh, x)) continue;
        try {
            step.mesh = mesh.with_vertices(std::move(x));
        } catch (const MeshError&) {
            continue;
        }
        row.alpha_used = alpha;
        step.accepted = true;
        return step;
    }
    row.alpha_used = 0.0;
    return step;
}

NewtonReport newton_iterate(const TriMesh& mesh, const NewtonConfig& config) {
    if (config.max_iterations < 0) throw InvalidArgument("newton: max_iterations must be non-negative");
    if (!(config.tolerance > 0)) throw InvalidArgument("newton: tolerance must be positive");
    if (!config.dump_dir.empty()) std::filesystem::create_directories(config.dump_dir);
    NewtonReport report;
    report.termination = "max_iterations";
    TriMesh current = mesh;
    for (int k = 0; k < config.max_iterations; ++k) {
        const SurfaceFemSpace fem = build_fem_space(current, config.fem);
        const Vector rhs = assemble_rhs(config.functional, fem);
        const double res = residual_norm(fem, rhs);
        if (res <= config.tolerance) {
            NewtonIteration row;
            row.iter = k;
            row.J = evaluate(make_functional(config.functional), current);
            row.residual = res;
            report.rows.push_back(row);
            report.termination = "converged";
            break;
        }
        NewtonStep step = newton_step(current, config, k);
        report.rows.push_back(step.row);
        if (!step.accepted) {
            report.termination = "step_rejected";
            break;
        }
        current = std::move(step.mesh);
        if (!config.dump_dir.empty()) {
            char name[32];
            std::snprintf(name, sizeof name, "iter_%03d.off", k + 1);
            write_mesh(current, (std::filesystem::path(config.dump_dir) / name).string(), MeshFormat::off);
        }
    }
    if (report.termination == "max_iterations" && !report.rows.empty()) {
        const SurfaceFemSpace fem = build_fem_space(current, config.fem);
        NewtonIteration row;
        row.iter = config.max_iterations;
        row.J = evaluate(make_functional(config.functional), current);
        row.residual = residual_norm(fem, assemble_rhs(config.functional, fem));
        report.rows.push_back(row);
    }
    report.final_mesh = current;
    return report;
}

void write_report_csv(const NewtonReport& report, std::ostream& out) {
    out << "iter,J,residual,u_inf,u_l2,cg_iters,alpha_used\n";
    char buf[256];
    for (const NewtonIteration& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%d,%.17g\n", r.iter, r.J, r.residual, r.u_inf,
                      r.u_l2, r.cg_iters, r.alpha_used);
        out << buf;
    }
}

}  // namespace shapecalc
