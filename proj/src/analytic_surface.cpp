#include "shapecalc/analytic_surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "shapecalc/errors.hpp"

namespace shapecalc {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, 2 * kPi);
    return a < 0 ? a + 2 * kPi : a;
}

Jet phi_jet(const LevelSetGeometry& ls, const Vec3& x) { return ls.phi(x); }

}  // namespace

LevelSetGeometry LevelSetGeometry::from_polynomial(const Polynomial& p, const Vec3& box_min,
                                                   const Vec3& box_max) {
    LevelSetGeometry ls;
    ls.phi = [p](const Vec3& x) { return p.jet(x); };
    std::array<Polynomial, 3> d{p.derivative(0), p.derivative(1), p.derivative(2)};
    ls.grad_jets = [d](const Vec3& x) { return VecJet{d[0].jet(x), d[1].jet(x), d[2].jet(x)}; };
    ls.box_min = box_min;
    ls.box_max = box_max;
    return ls;
}

VecJet LevelSetGeometry::normal_jets(const Vec3& x) const {
    const VecJet d = grad_jets(x);
    const Jet inv = 1.0 / sqrt(dot(d, d));
    return {d[0] * inv, d[1] * inv, d[2] * inv};
}

void gauss_legendre(int q, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
    if (q < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
    nodes.assign(q, 0.0);
    weights.assign(q, 0.0);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < (q + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= q; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
            }
            dp = q * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= q; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
        }
        dp = q * (x * p0 - p1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = mid - half * x;
        nodes[q - 1 - i] = mid + half * x;
        weights[i] = weights[q - 1 - i] = half * w;
    }
}

AnalyticSurface::AnalyticSurface(std::string name, LevelSetGeometry level_set,
                                 std::vector<ParametricChart> atlas, double scale, double tube_radius,
                                 int quadrature_order, ShapeParameters shape)
    : name_(std::move(name)),
      level_set_(std::move(level_set)),
      atlas_(std::move(atlas)),
      scale_(scale),
      tube_radius_(tube_radius),
      order_(quadrature_order),
      shape_(shape) {
    if (!(scale_ > 0)) throw InvalidArgument("surface scale must be positive");
    if (order_ < 1) throw InvalidArgument("quadrature order must be positive");

    std::vector<double> gu, gw;
    gauss_legendre(order_, 0.0, 1.0, gu, gw);
    const int per_chart = order_ * order_;
    auto nodes = std::make_shared<std::vector<QuadratureNode>>(atlas_.size() * per_chart);
    const long total = static_cast<long>(nodes->size());

    // Per-node failures are collected and rethrown outside the parallel region.
    std::vector<int> status(total, 0);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < total; ++k) {
        const int c = static_cast<int>(k / per_chart);
        const int i = static_cast<int>((k % per_chart) / order_), j = static_cast<int>(k % order_);
        const ParametricChart& ch = atlas_[c];
        const double u = ch.u0 + (ch.u1 - ch.u0) * gu[i];
        const double w = ch.w0 + (ch.w1 - ch.w0) * gu[j];
        const ChartJet cj = ch.eval(u, w);
        const Vec3 cross = cj.xu.cross(cj.xw);
        const double area = cross.norm();
        QuadratureNode& node = (*nodes)[k];
        node.point = cj.x;
        node.where = {c, u, w};
        node.weight = gw[i] * gw[j] * (ch.u1 - ch.u0) * (ch.w1 - ch.w0) * area;
        if (area < 1e-14 * scale_ * scale_) {
            status[k] = 1;
            continue;
        }
        const Jet ph = level_set_.phi(cj.x);
        const double gn = ph.g.norm();
        if (gn < 1e-12) {
            status[k] = 2;
            continue;
        }
        node.normal = ph.g / gn;
        const Mat3 proj = tangential_projector<3>(node.normal);
        node.shape_operator = proj * ph.h * proj / gn;
        if (std::abs(ph.v) / gn > 1e-12 * scale_) status[k] = 3;
        else if (node.normal.dot(cross) <= 0) status[k] = 4;
    }
    for (long k = 0; k < total; ++k) {
        switch (status[k]) {
            case 1: throw InvalidArgument(name_ + ": chart is not an immersion at a quadrature node");
            case 2: throw DegenerateGradient(name_ + ": degenerate level-set gradient at a quadrature node");
            case 3: throw InvalidArgument(name_ + ": chart image leaves the level set");
            case 4: throw InvalidArgument(name_ + ": chart orientation disagrees with the outward normal");
            default: break;
        }
    }
    nodes_ = std::move(nodes);
}

AnalyticSurface AnalyticSurface::with_order(int q) const {
    return AnalyticSurface(name_, level_set_, atlas_, scale_, tube_radius_, q, shape_);
}

AnalyticSurface AnalyticSurface::flipped() const {
    LevelSetGeometry ls = level_set_;
    ls.phi = [f = level_set_.phi](const Vec3& x) { return -f(x); };
    ls.grad_jets = [g = level_set_.grad_jets](const Vec3& x) {
        VecJet j = g(x);
        for (auto& c : j) c = -c;
        return j;
    };
    std::vector<ParametricChart> mirrored;
    for (const ParametricChart& ch : atlas_) {
        ParametricChart m;
        m.eval = [e = ch.eval](double u, double w) {
            ChartJet c = e(w, u);
            std::swap(c.xu, c.xw);
            std::swap(c.xuu, c.xww);
            return c;
        };
        m.u0 = ch.w0;
        m.u1 = ch.w1;
        m.w0 = ch.u0;
        m.w1 = ch.u1;
        if (ch.inverse)
            m.inverse = [inv = ch.inverse](const Vec3& x) -> std::optional<Eigen::Vector2d> {
                auto p = inv(x);
                if (!p) return std::nullopt;
                return Eigen::Vector2d((*p)[1], (*p)[0]);
            };
        mirrored.push_back(std::move(m));
    }
    ShapeParameters s = shape_;
    s.inward = !s.inward;
    return AnalyticSurface(name_ + "-flipped", std::move(ls), std::move(mirrored), scale_, tube_radius_,
                           order_, s);
}

double AnalyticSurface::distance_estimate(const Vec3& x) const {
    const Jet p = phi_jet(level_set_, x);
    const double g = p.g.norm();
    if (g < 1e-12) throw DegenerateGradient(name_ + ": |grad phi| vanishes");
    return std::abs(p.v) / g;
}

SurfacePoint AnalyticSurface::at(const Vec3& x) const {
    const Jet p = phi_jet(level_set_, x);
    const double g = p.g.norm();
    if (g < 1e-12) throw DegenerateGradient(name_ + ": |grad phi| vanishes");
    if (std::abs(p.v) / g > surface_tolerance()) throw NotOnSurface(name_ + ": point is not on the surface");

    SurfacePoint sp;
    sp.x = x;
    sp.normal = p.g / g;
    sp.projector = tangential_projector<3>(sp.normal);
    sp.normal_jacobian = sp.projector * p.h / g;
    sp.shape = sp.normal_jacobian * sp.projector;
    sp.shape = sym<3>(sp.shape);
    sp.kappa = sp.shape.trace();

    sp.normal_jets = level_set_.normal_jets(x);
    return sp;
}

Vec3 AnalyticSurface::normal_at(const Vec3& x) const { return at(x).normal; }

Mat3 AnalyticSurface::shape_operator_at(const Vec3& x) const { return at(x).shape; }

Vec3 AnalyticSurface::project(const Vec3& x0) const {
    for (int k = 0; k < 3; ++k)
        if (x0[k] < level_set_.box_min[k] || x0[k] > level_set_.box_max[k])
            throw InvalidArgument(name_ + ": point outside the bounding box");
    if (distance_estimate(x0) > tube_radius_) throw InvalidArgument(name_ + ": point outside the tube");
    Vec3 x = x0;
    for (int it = 0; it < 50; ++it) {
        const Jet p = phi_jet(level_set_, x);
        const double g2 = p.g.squaredNorm();
        if (g2 < 1e-24) throw DegenerateGradient(name_ + ": |grad phi| vanishes during projection");
        if (std::abs(p.v) / std::sqrt(g2) <= 1e-12 * scale_) return x;
        x -= p.v * p.g / g2;
    }
    throw ConvergenceFailure(name_ + ": projection did not converge in 50 iterations");
}

std::optional<ChartPoint> AnalyticSurface::locate(const Vec3& x) const {
    for (int c = 0; c < static_cast<int>(atlas_.size()); ++c) {
        const ParametricChart& ch = atlas_[c];
        if (!ch.inverse) continue;
        const auto uw = ch.inverse(x);
        if (!uw) continue;
        if ((ch.eval((*uw)[0], (*uw)[1]).x - x).norm() <= 1e-9 * scale_) return ChartPoint{c, (*uw)[0], (*uw)[1]};
    }
    return std::nullopt;
}

AnalyticSurface make_sphere(double radius, const Vec3& center, int q) {
    if (!(radius > 0)) throw InvalidArgument("sphere radius must be positive");
    const Polynomial x = Polynomial::coordinate(0) - Polynomial::constant(center[0]);
    const Polynomial y = Polynomial::coordinate(1) - Polynomial::constant(center[1]);
    const Polynomial z = Polynomial::coordinate(2) - Polynomial::constant(center[2]);
    const Polynomial phi = x * x + y * y + z * z - Polynomial::constant(radius * radius);
    const Vec3 pad = Vec3::Constant(3 * radius);

    ParametricChart ch;
    ch.u0 = 0.0;
    ch.u1 = kPi;
    ch.w0 = 0.0;
    ch.w1 = 2 * kPi;
    ch.eval = [radius, center](double th, double ph) {
        const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
        ChartJet c;
        c.x = center + radius * Vec3(st * cp, st * sp, ct);
        c.xu = radius * Vec3(ct * cp, ct * sp, -st);
        c.xw = radius * Vec3(-st * sp, st * cp, 0.0);
        c.xuu = radius * Vec3(-st * cp, -st * sp, -ct);
        c.xuw = radius * Vec3(-ct * sp, ct * cp, 0.0);
        c.xww = radius * Vec3(-st * cp, -st * sp, 0.0);
        return c;
    };
    ch.inverse = [center](const Vec3& p) -> std::optional<Eigen::Vector2d> {
        const Vec3 d = p - center;
        const double r = d.norm();
        if (r == 0) return std::nullopt;
        return Eigen::Vector2d(std::acos(std::clamp(d[2] / r, -1.0, 1.0)), wrap_angle(std::atan2(d[1], d[0])));
    };
    ShapeParameters s{ShapeParameters::Kind::sphere, center, Vec3(radius, 0, 0), false};
    return AnalyticSurface("sphere", LevelSetGeometry::from_polynomial(phi, center - pad, center + pad), {ch},
                           radius, radius, q, s);
}

AnalyticSurface make_ellipsoid(double a, double b, double c, const Vec3& center, int q) {
    if (!(a > 0 && b > 0 && c > 0)) throw InvalidArgument("ellipsoid semi-axes must be positive");
    const Polynomial x = Polynomial::coordinate(0) - Polynomial::constant(center[0]);
    const Polynomial y = Polynomial::coordinate(1) - Polynomial::constant(center[1]);
    const Polynomial z = Polynomial::coordinate(2) - Polynomial::constant(center[2]);
    const Polynomial phi = (1.0 / (a * a)) * (x * x) + (1.0 / (b * b)) * (y * y) + (1.0 / (c * c)) * (z * z) -
                           Polynomial::constant(1.0);
    const double big = std::max({a, b, c}), small = std::min({a, b, c});
    const Vec3 pad = Vec3::Constant(3 * big);

    ParametricChart ch;
    ch.u0 = 0.0;
    ch.u1 = kPi;
    ch.w0 = 0.0;
    ch.w1 = 2 * kPi;
    const Vec3 ax(a, b, c);
    ch.eval = [ax, center](double th, double ph) {
        const double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
        ChartJet j;
        j.x = center + ax.cwiseProduct(Vec3(st * cp, st * sp, ct));
        j.xu = ax.cwiseProduct(Vec3(ct * cp, ct * sp, -st));
        j.xw = ax.cwiseProduct(Vec3(-st * sp, st * cp, 0.0));
        j.xuu = ax.cwiseProduct(Vec3(-st * cp, -st * sp, -ct));
        j.xuw = ax.cwiseProduct(Vec3(-ct * sp, ct * cp, 0.0));
        j.xww = ax.cwiseProduct(Vec3(-st * cp, -st * sp, 0.0));
        return j;
    };
    ch.inverse = [ax, center](const Vec3& p) -> std::optional<Eigen::Vector2d> {
        const Vec3 d = (p - center).cwiseQuotient(ax);
        const double r = d.norm();
        if (r == 0) return std::nullopt;
        return Eigen::Vector2d(std::acos(std::clamp(d[2] / r, -1.0, 1.0)), wrap_angle(std::atan2(d[1], d[0])));
    };
    ShapeParameters s{ShapeParameters::Kind::ellipsoid, center, ax, false};
    return AnalyticSurface("ellipsoid", LevelSetGeometry::from_polynomial(phi, center - pad, center + pad), {ch},
                           big, small, q, s);
}

AnalyticSurface make_torus(double major, double minor, const Vec3& center, int q) {
    if (!(major > minor && minor > 0)) throw InvalidArgument("torus needs major > minor > 0");
    const Polynomial x = Polynomial::coordinate(0) - Polynomial::constant(center[0]);
    const Polynomial y = Polynomial::coordinate(1) - Polynomial::constant(center[1]);
    const Polynomial z = Polynomial::coordinate(2) - Polynomial::constant(center[2]);
    const Polynomial s = x * x + y * y + z * z + Polynomial::constant(major * major - minor * minor);
    const Polynomial phi = s * s - (4 * major * major) * (x * x + y * y);
    const Vec3 pad(2 * (major + minor), 2 * (major + minor), 3 * minor);

    ParametricChart ch;
    ch.u0 = 0.0;
    ch.u1 = 2 * kPi;
    ch.w0 = 0.0;
    ch.w1 = 2 * kPi;
    ch.eval = [major, minor, center](double u, double v) {
        const double su = std::sin(u), cu = std::cos(u), sv = std::sin(v), cv = std::cos(v);
        const double rho = major + minor * cv;
        ChartJet j;
        j.x = center + Vec3(rho * cu, rho * su, minor * sv);
        j.xu = Vec3(-rho * su, rho * cu, 0.0);
        j.xw = Vec3(-minor * sv * cu, -minor * sv * su, minor * cv);
        j.xuu = Vec3(-rho * cu, -rho * su, 0.0);
        j.xuw = Vec3(minor * sv * su, -minor * sv * cu, 0.0);
        j.xww = Vec3(-minor * cv * cu, -minor * cv * su, -minor * sv);
        return j;
    };
    ch.inverse = [major, center](const Vec3& p) -> std::optional<Eigen::Vector2d> {
        const Vec3 d = p - center;
        const double rho = std::hypot(d[0], d[1]);
        return Eigen::Vector2d(wrap_angle(std::atan2(d[1], d[0])), wrap_angle(std::atan2(d[2], rho - major)));
    };
    ShapeParameters sp{ShapeParameters::Kind::torus, center, Vec3(major, minor, 0), false};
    return AnalyticSurface("torus", LevelSetGeometry::from_polynomial(phi, center - pad, center + pad), {ch},
                           major + minor, minor, q, sp);
}

AnalyticSurface make_builtin(const ShapeParameters& p, int q) {
    AnalyticSurface base = [&] {
        switch (p.kind) {
            case ShapeParameters::Kind::sphere: return make_sphere(p.dims[0], p.center, q);
            case ShapeParameters::Kind::ellipsoid: return make_ellipsoid(p.dims[0], p.dims[1], p.dims[2], p.center, q);
            case ShapeParameters::Kind::torus: return make_torus(p.dims[0], p.dims[1], p.center, q);
            default: throw InvalidArgument("make_builtin: not a built-in shape");
        }
    }();
    return p.inward ? base.flipped() : base;
}

}  // namespace shapecalc
