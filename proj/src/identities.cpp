#include "shapecalc/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shapecalc/errors.hpp"
#include "shapecalc/invariants.hpp"
#include "shapecalc/kernels.hpp"
#include "shapecalc/random.hpp"
#include "shapecalc/tangential.hpp"

namespace shapecalc {

namespace {

struct Fields {
    Polynomial alpha;
    std::array<Polynomial, 3> u, v;
    std::array<std::array<Polynomial, 3>, 3> s;
};

Fields make_fields(std::uint64_t seed, int degree) {
    SplitMix rng(seed);
    Fields f;
    f.alpha = Polynomial::random(degree, rng.next());
    for (auto& p : f.u) p = Polynomial::random(degree, rng.next());
    for (auto& p : f.v) p = Polynomial::random(degree, rng.next());
    for (auto& row : f.s)
        for (auto& p : row) p = Polynomial::random(degree, rng.next());
    return f;
}

VecJet vec_jet(const std::array<Polynomial, 3>& p, const Vec3& x) { return {p[0].jet(x), p[1].jet(x), p[2].jet(x)}; }

// Entry (i, j) of DW as a jet; only value and gradient are meaningful.
Jet partial_jet(const VecJet& w, int i, int j) { return Jet(w[i].g[j], w[i].h.row(j).transpose(), Mat3::Zero()); }

double scaled(double err, double mag) { return err / std::max(1.0, mag); }

double norm_of(const Mat3& m) { return m.norm(); }
double norm_of(const Vec3& v) { return v.norm(); }
double norm_of(double v) { return std::abs(v); }

template <class T>
double mismatch(const T& lhs, const T& rhs) {
    return scaled(norm_of(T(lhs - rhs)), std::max(norm_of(lhs), norm_of(rhs)));
}

// Pointwise residuals of the six product rules, div formula and curvature gradient.
std::array<double, 8> pointwise(const SurfacePoint& sp, const Fields& f) {
    const Vec3& x = sp.x;
    const Mat3& P = sp.projector;
    const Jet a = f.alpha.jet(x);
    const VecJet u = vec_jet(f.u, x), v = vec_jet(f.v, x);
    TensorJet s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s[i][j] = f.s[i][j].jet(x);
    const Vec3 uv = value_of(u), vv = value_of(v);
    const Mat3 sv = value_of(s);
    const Vec3 ga = tangential_gradient(sp, a);
    const Mat3 du = tangential_jacobian(sp, u), dv = tangential_jacobian(sp, v);
    const Vec3 divs = tangential_divergence(sp, s);

    std::array<double, 8> r{};

    VecJet au;
    for (int i = 0; i < 3; ++i) au[i] = a * u[i];
    r[0] = mismatch(tangential_jacobian(sp, au), Mat3(uv * ga.transpose() + a.v * du));
    r[1] = mismatch(tangential_divergence(sp, au), a.v * tangential_divergence(sp, u) + uv.dot(ga));
    r[2] = mismatch(tangential_gradient(sp, dot(u, v)), Vec3(du.transpose() * vv + dv.transpose() * uv));

    TensorJet uov;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) uov[i][j] = u[i] * v[j];
    r[3] = mismatch(tangential_divergence(sp, uov), Vec3(uv * tangential_divergence(sp, v) + du * vv));

    VecJet stu;
    for (int j = 0; j < 3; ++j) stu[j] = s[0][j] * u[0] + s[1][j] * u[1] + s[2][j] * u[2];
    r[4] = mismatch(tangential_divergence(sp, stu), frobenius<3>(sv, du) + uv.dot(divs));

    TensorJet as;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) as[i][j] = a * s[i][j];
    r[5] = mismatch(tangential_divergence(sp, as), Vec3(sv * ga + a.v * divs));

    // ∇_Γ Div_Γ w = P Div_Γ(D_Γwᵀ) - D_Γn D_Γwᵀ n with w = u
    const TensorJet pt = extended_projector(sp);
    Jet div_ext;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) div_ext += pt[i][j] * partial_jet(u, i, j);
    TensorJet dwt;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            dwt[i][j] = pt[i][0] * partial_jet(u, j, 0) + pt[i][1] * partial_jet(u, j, 1) + pt[i][2] * partial_jet(u, j, 2);
    const Vec3 lhs = P * div_ext.g;
    const Vec3 rhs = P * tangential_divergence(sp, dwt) - sp.shape * du.transpose() * sp.normal;
    r[6] = mismatch(lhs, rhs);

    // κ extended as Div ñ
    Vec3 grad_kappa = Vec3::Zero();
    for (int i = 0; i < 3; ++i) grad_kappa += sp.normal_jets[i].h.row(i).transpose();
    r[7] = mismatch(Vec3(P * grad_kappa), curvature_gradient(sp));
    return r;
}

}  // namespace

int euler_characteristic(const AnalyticSurface& surface) {
    switch (surface.shape().kind) {
        case ShapeParameters::Kind::sphere:
        case ShapeParameters::Kind::ellipsoid:
            return 2;
        case ShapeParameters::Kind::torus:
            return 0;
        default:
            throw InvalidArgument(surface.name() + ": Euler characteristic unknown");
    }
}

std::vector<IdentityCheck> tangential_identity_suite(const AnalyticSurface& surface, const IdentityOptions& opt) {
    if (opt.fields < 1 || opt.points < 1) throw InvalidArgument("identity suite needs fields >= 1 and points >= 1");
    const auto& nodes = surface.quadrature();
    const long n = static_cast<long>(nodes.size());

    std::vector<double> unit(n), sn(n), sym(n);
    parallel_for(n, [&](long k) {
        const SurfacePoint sp = surface.at(nodes[k].point);
        unit[k] = std::abs(sp.normal.norm() - 1.0);
        sn[k] = scaled((sp.shape * sp.normal).norm(), sp.shape.norm());
        sym[k] = scaled((sp.shape - sp.shape.transpose()).norm(), sp.shape.norm());
    });

    std::array<double, 8> worst{};
    double div_theorem = 0.0;
    for (int fi = 0; fi < opt.fields; ++fi) {
        const Fields f = make_fields(opt.seed * 1000003ull + static_cast<std::uint64_t>(fi), opt.degree);
        SplitMix pick(opt.seed + 7919ull * static_cast<std::uint64_t>(fi + 1));
        std::vector<long> idx(opt.points);
        for (auto& i : idx) i = static_cast<long>(pick.next() % static_cast<std::uint64_t>(n));
        std::vector<std::array<double, 8>> res(idx.size());
        parallel_for(static_cast<long>(idx.size()),
                     [&](long k) { res[k] = pointwise(surface.at(nodes[idx[k]].point), f); });
        for (const auto& r : res)
            for (int c = 0; c < 8; ++c) worst[c] = std::max(worst[c], r[c]);

        const double lhs = integrate_nodes(nodes, [&](const QuadratureNode& q) {
            return tangential_divergence(surface.at(q.point), vec_jet(f.u, q.point));
        });
        const double rhs = integrate_nodes(nodes, [&](const QuadratureNode& q) {
            const double kappa = q.shape_operator.trace();
            Vec3 w;
            for (int i = 0; i < 3; ++i) w[i] = f.u[i](q.point);
            return kappa * w.dot(q.normal);
        });
        const double mag = integrate_nodes(nodes, [&](const QuadratureNode& q) {
            return std::abs(tangential_divergence(surface.at(q.point), vec_jet(f.u, q.point)));
        });
        div_theorem = std::max(div_theorem, scaled(std::abs(lhs - rhs), mag));
    }

    const double gb = std::abs(total_gauss(surface) - 2.0 * std::numbers::pi * euler_characteristic(surface));
    auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
    const double tol = opt.tolerance;
    return {
        {"unit_normal", max_of(unit), 1e-12},
        {"shape_normal", max_of(sn), 1e-12},
        {"shape_symmetry", max_of(sym), 1e-12},
        {"product_rule_i", worst[0], tol},
        {"product_rule_ii", worst[1], tol},
        {"product_rule_iii", worst[2], tol},
        {"product_rule_iv", worst[3], tol},
        {"product_rule_v", worst[4], tol},
        {"product_rule_vi", worst[5], tol},
        {"divergence_theorem", div_theorem, tol},
        {"div_formula", worst[6], tol},
        {"curvature_gradient", worst[7], tol},
        {"gauss_bonnet", gb, tol},
    };
}

}  // namespace shapecalc
