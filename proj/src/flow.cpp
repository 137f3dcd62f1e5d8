#include "shapecalc/flow.hpp"

#include <cmath>

#include "shapecalc/errors.hpp"
#include "shapecalc/kernels.hpp"

namespace shapecalc {

int default_steps(double t) { return std::max(16, static_cast<int>(std::ceil(std::abs(t) / 0.01))); }

namespace {

template <class State, class Rhs>
State rk4(State y, double t, int steps, Rhs&& f) {
    if (steps < 1) throw InvalidArgument("flow: steps must be at least 1");
    const double dt = t / steps;
    for (int s = 0; s < steps; ++s) {
        const State k1 = f(y);
        const State k2 = f(y + (0.5 * dt) * k1);
        const State k3 = f(y + (0.5 * dt) * k2);
        const State k4 = f(y + dt * k3);
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!y.allFinite()) throw ConvergenceFailure("flow: non-finite state during integration");
    }
    return y;
}

using FrameState = Eigen::Matrix<double, 18, 1>;

FrameState pack(const ChartJet& c) {
    FrameState s;
    s << c.x, c.xu, c.xw, c.xuu, c.xuw, c.xww;
    return s;
}

ChartJet unpack(const FrameState& s) {
    return {s.segment<3>(0), s.segment<3>(3), s.segment<3>(6), s.segment<3>(9), s.segment<3>(12), s.segment<3>(15)};
}

Vec3 second_variation(const VecJet& j, const Vec3& a, const Vec3& b) {
    return Vec3(a.dot(j[0].h * b), a.dot(j[1].h * b), a.dot(j[2].h * b));
}

}  // namespace

Vec3 integrate_trajectory(const VelocityField& v, const Vec3& x0, double t, int steps) {
    return rk4(x0, t, steps, [&](const Vec3& x) { return v.value(x); });
}

namespace {

FlowedMesh flow_mesh_impl(const TriMesh& mesh, const VelocityField& v, double t, int steps, bool parallel) {
    std::vector<Vec3> x = mesh.vertices();
    if (parallel) {
        parallel_for(static_cast<long>(x.size()), [&](long i) { x[i] = integrate_trajectory(v, x[i], t, steps); });
    } else {
        for (Vec3& p : x) p = integrate_trajectory(v, p, t, steps);
    }
    FlowedMesh out{mesh.with_vertices(std::move(x)), 0};
    const std::vector<Vec3> vn = vertex_normals(out.mesh);
    for (int k = 0; k < static_cast<int>(out.mesh.num_triangles()); ++k) {
        const Triangle& tri = out.mesh.triangle(k);
        if (out.mesh.triangle_normal(k).dot(vn[tri[0]] + vn[tri[1]] + vn[tri[2]]) <= 0) ++out.inverted;
    }
    return out;
}

}  // namespace

FlowedMesh flow_mesh(const TriMesh& mesh, const VelocityField& v, double t, int steps) {
    return flow_mesh_impl(mesh, v, t, steps, true);
}

FlowedMesh flow_mesh_serial(const TriMesh& mesh, const VelocityField& v, double t, int steps) {
    return flow_mesh_impl(mesh, v, t, steps, false);
}

ChartJet transport_chart_jet(const VelocityField& v, const ChartJet& c0, double t, int steps) {
    const FrameState out = rk4(pack(c0), t, steps, [&](const FrameState& s) {
        const ChartJet c = unpack(s);
        const VecJet j = v.jet(c.x);
        const Mat3 dv = jacobian_of(j);
        ChartJet d;
        d.x = value_of(j);
        d.xu = dv * c.xu;
        d.xw = dv * c.xw;
        d.xuu = second_variation(j, c.xu, c.xu) + dv * c.xuu;
        d.xuw = second_variation(j, c.xu, c.xw) + dv * c.xuw;
        d.xww = second_variation(j, c.xw, c.xw) + dv * c.xww;
        return pack(d);
    });
    return unpack(out);
}

FrameGeometry frame_geometry(const ChartJet& c) {
    FrameGeometry g;
    g.x = c.x;
    const Vec3 cr = c.xu.cross(c.xw);
    g.area_element = cr.norm();
    g.normal = cr / g.area_element;
    Eigen::Matrix<double, 3, 2> jac;
    jac << c.xu, c.xw;
    const Eigen::Matrix2d first = jac.transpose() * jac;
    Eigen::Matrix2d second;
    second << c.xuu.dot(g.normal), c.xuw.dot(g.normal), c.xuw.dot(g.normal), c.xww.dot(g.normal);
    const Eigen::Matrix2d ginv = first.inverse();
    g.shape = -jac * (ginv * second * ginv) * jac.transpose();
    g.shape = sym<3>(g.shape);
    return g;
}

std::optional<ExactFamily> exact_family(const AnalyticSurface& surface, const VelocityField& v) {
    using Kind = ShapeParameters::Kind;
    const ShapeParameters base = surface.shape();
    if (base.kind == Kind::custom) return std::nullopt;
    ExactFamily f;
    switch (v.family()) {
        case VelocityField::Family::zero:
            f.shape = [base](double) { return base; };
            f.track = [](const Vec3& x, double) { return x; };
            return f;
        case VelocityField::Family::dilation:
            f.shape = [base](double t) {
                ShapeParameters s = base;
                s.center *= std::exp(t);
                s.dims *= std::exp(t);
                return s;
            };
            f.track = [](const Vec3& x, double t) { return Vec3(std::exp(t) * x); };
            return f;
        case VelocityField::Family::translation:
            f.shape = [base, d = v.direction()](double t) {
                ShapeParameters s = base;
                s.center += t * d;
                return s;
            };
            f.track = [d = v.direction()](const Vec3& x, double t) { return Vec3(x + t * d); };
            return f;
        case VelocityField::Family::radial:
            if (base.kind != Kind::sphere || base.center.norm() != 0.0) return std::nullopt;
            f.shape = [base](double t) {
                ShapeParameters s = base;
                s.dims[0] += t;
                return s;
            };
            f.track = [](const Vec3& x, double t) { return Vec3(x + t * x.normalized()); };
            return f;
        case VelocityField::Family::normal_inflation: {
            const auto& inflated = v.inflated_shape();
            if (!inflated || inflated->kind != base.kind || inflated->center != base.center ||
                inflated->dims != base.dims || inflated->inward != base.inward)
                return std::nullopt;
            if (base.kind != Kind::sphere && base.kind != Kind::torus) return std::nullopt;
            const int axis = base.kind == Kind::sphere ? 0 : 1;
            const double sign = base.inward ? -1.0 : 1.0;
            f.shape = [base, axis, sign](double t) {
                ShapeParameters s = base;
                s.dims[axis] += sign * t;
                return s;
            };
            f.track = [v](const Vec3& x, double t) { return Vec3(x + t * v.value(x)); };
            return f;
        }
        default:
            return std::nullopt;
    }
}

double flowed_functional(const FunctionalSpec& j, const AnalyticSurface& surface, const VelocityField& v, double t,
                         bool use_exact) {
    if (use_exact) {
        if (const auto fam = exact_family(surface, v))
            return evaluate(j, make_builtin(fam->shape(t), surface.quadrature_order()));
    }
    const auto& nodes = surface.quadrature();
    const int steps = default_steps(t);
    return blocked_sum(parallel_terms(static_cast<long>(nodes.size()), [&](long i) {
        const QuadratureNode& q = nodes[i];
        const ChartJet c0 = surface.atlas()[q.where.chart].eval(q.where.u, q.where.w);
        const double param_weight = q.weight / c0.xu.cross(c0.xw).norm();
        const FrameGeometry g = frame_geometry(transport_chart_jet(v, c0, t, steps));
        const double w = param_weight * g.area_element;
        return w * j.z(LocalGeometry{g.x, g.normal, g.shape, w});
    }));
}

namespace {

double central(const std::function<double(double)>& f, double h, bool richardson) {
    const double d1 = (f(h) - f(-h)) / (2 * h);
    if (!richardson) return d1;
    const double d2 = (f(0.5 * h) - f(-0.5 * h)) / h;
    return (4 * d2 - d1) / 3.0;
}

std::vector<double> central_vec(const std::function<std::vector<double>(double)>& f, double h, bool richardson) {
    const auto p = f(h), m = f(-h);
    std::vector<double> d(p.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (p[k] - m[k]) / (2 * h);
    if (!richardson) return d;
    const auto p2 = f(0.5 * h), m2 = f(-0.5 * h);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = (4 * (p2[k] - m2[k]) / h - d[k]) / 3.0;
    return d;
}

std::vector<double> quantity(const PointQuantitySpec& q, const Vec3& x, const Vec3& n, const Mat3& s) {
    switch (q.kind) {
        case PointQuantity::kappa: return {s.trace()};
        case PointQuantity::kappa_g: return {0.5 * (s.trace() * s.trace() - s.squaredNorm())};
        case PointQuantity::trace_power: {
            Mat3 p = s;
            for (int k = 1; k < q.p; ++k) p = p * s;
            return {p.trace()};
        }
        case PointQuantity::normal: return {n[0], n[1], n[2]};
        case PointQuantity::restriction: return {q.phi.value(x)};
    }
    return {};
}

}  // namespace

double fd_functional_derivative(const FunctionalSpec& j, const AnalyticSurface& surface, const VelocityField& v,
                                const FdOptions& opt) {
    if (!(opt.h > 0)) throw InvalidArgument("fd: h must be positive");
    const double h = opt.h * surface.scale();
    return central([&](double t) { return flowed_functional(j, surface, v, t, opt.use_exact); }, h, opt.richardson);
}

std::vector<double> fd_pointwise_derivative(const PointQuantitySpec& q, const AnalyticSurface& surface,
                                            const ChartPoint& X, const VelocityField& v, const FdOptions& opt) {
    if (!(opt.h > 0)) throw InvalidArgument("fd: h must be positive");
    if (q.kind == PointQuantity::restriction && !q.phi) throw InvalidArgument("fd: restriction needs a field");
    if (q.kind == PointQuantity::trace_power && q.p < 1) throw InvalidArgument("fd: trace power must be at least 1");
    const ParametricChart& chart = surface.atlas().at(X.chart);
    const ChartJet c0 = chart.eval(X.u, X.w);
    const double h = opt.h * surface.scale();

    std::function<std::vector<double>(double)> at_time;
    const auto fam = opt.use_exact ? exact_family(surface, v) : std::nullopt;
    if (fam) {
        at_time = [&, fam](double t) {
            const Vec3 x = fam->track(c0.x, t);
            const Vec3 rk = integrate_trajectory(v, c0.x, t, default_steps(t));
            if ((rk - x).norm() > 1e-8 * surface.scale())
                throw ConvergenceFailure("fd: tracked point drifted off the flowed surface");
            const SurfacePoint sp = make_builtin(fam->shape(t), 4).at(x);
            return quantity(q, x, sp.normal, sp.shape);
        };
    } else {
        at_time = [&](double t) {
            const FrameGeometry g = frame_geometry(transport_chart_jet(v, c0, t, default_steps(t)));
            return quantity(q, g.x, g.normal, g.shape);
        };
    }
    std::vector<double> dot = central_vec(at_time, h, opt.richardson);

    // convection ∇_Γ q · v by chart differences at t = 0
    const double delta = 1e-3;
    auto on_chart = [&](double du, double dw) {
        const FrameGeometry g = frame_geometry(chart.eval(X.u + du, X.w + dw));
        return quantity(q, g.x, g.normal, g.shape);
    };
    const std::vector<double> qu = central_vec([&](double s) { return on_chart(s, 0.0); }, delta, true);
    const std::vector<double> qw = central_vec([&](double s) { return on_chart(0.0, s); }, delta, true);
    Eigen::Matrix<double, 3, 2> jac;
    jac << c0.xu, c0.xw;
    const Eigen::Matrix2d ginv = (jac.transpose() * jac).inverse();
    const Vec3 vel = v.value(c0.x);
    for (std::size_t k = 0; k < dot.size(); ++k) {
        const Vec3 grad = jac * (ginv * Eigen::Vector2d(qu[k], qw[k]));
        dot[k] -= grad.dot(vel);
    }
    return dot;
}

}  // namespace shapecalc
