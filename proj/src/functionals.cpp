#include "shapecalc/functionals.hpp"

#include <cmath>

#include "shapecalc/errors.hpp"
#include "shapecalc/kernels.hpp"

namespace shapecalc {

namespace {

double kappa_of(const Mat3& s) { return s.trace(); }
double kappa_g_of(const Mat3& s) {
    const double k = s.trace();
    return 0.5 * (k * k - s.squaredNorm());
}

}  // namespace

FunctionalSpec make_functional(BuiltinFunctional kind, double kappa0) {
    FunctionalSpec f;
    f.kind = kind;
    f.kappa0 = kappa0;
    switch (kind) {
        case BuiltinFunctional::area:
            f.name = "area";
            f.z = [](const LocalGeometry&) { return 1.0; };
            f.z_prime = [](const SurfacePoint&, const NormalSpeedData&) { return 0.0; };
            break;
        case BuiltinFunctional::willmore:
            f.name = "willmore";
            f.z = [](const LocalGeometry& g) {
                const double k = kappa_of(g.shape);
                return 0.5 * k * k;
            };
            f.z_prime = [](const SurfacePoint& sp, const NormalSpeedData& d) {
                return sp.kappa * curvature_prime(sp, d);
            };
            break;
        case BuiltinFunctional::spontaneous:
            f.name = "spontaneous";
            f.z = [kappa0](const LocalGeometry& g) {
                const double k = kappa_of(g.shape) - kappa0;
                return 0.5 * k * k;
            };
            f.z_prime = [kappa0](const SurfacePoint& sp, const NormalSpeedData& d) {
                return (sp.kappa - kappa0) * curvature_prime(sp, d);
            };
            break;
        case BuiltinFunctional::total_gauss:
            f.name = "total_gauss";
            f.z = [](const LocalGeometry& g) { return kappa_g_of(g.shape); };
            f.z_prime = [](const SurfacePoint& sp, const NormalSpeedData& d) { return gauss_curvature_prime(sp, d); };
            break;
    }
    return f;
}

FunctionalSpec functional_by_name(const std::string& name) {
    if (name == "area") return make_functional(BuiltinFunctional::area);
    if (name == "willmore") return make_functional(BuiltinFunctional::willmore);
    if (name == "total_gauss") return make_functional(BuiltinFunctional::total_gauss);
    if (name == "spontaneous") return make_functional(BuiltinFunctional::spontaneous, 1.0);
    const std::string prefix = "spontaneous(";
    if (name.rfind(prefix, 0) == 0 && name.back() == ')') {
        const std::string arg = name.substr(prefix.size(), name.size() - prefix.size() - 1);
        try {
            std::size_t used = 0;
            const double k0 = std::stod(arg, &used);
            if (used == arg.size() && std::isfinite(k0)) return make_functional(BuiltinFunctional::spontaneous, k0);
        } catch (const std::exception&) {
        }
    }
    throw InvalidArgument("unknown functional '" + name + "'");
}

double evaluate(const FunctionalSpec& j, const std::vector<LocalGeometry>& nodes) {
    return blocked_sum(parallel_terms(static_cast<long>(nodes.size()),
                                      [&](long i) { return nodes[i].weight * j.z(nodes[i]); }));
}

std::vector<LocalGeometry> local_geometry(const AnalyticSurface& surface) {
    std::vector<LocalGeometry> out;
    out.reserve(surface.quadrature().size());
    for (const QuadratureNode& n : surface.quadrature())
        out.push_back({n.point, n.normal, n.shape_operator, n.weight});
    return out;
}

double evaluate(const FunctionalSpec& j, const AnalyticSurface& surface) {
    return integrate_nodes(surface.quadrature(), [&](const QuadratureNode& n) {
        return j.z(LocalGeometry{n.point, n.normal, n.shape_operator, n.weight});
    });
}

double evaluate(const FunctionalSpec& j, const TriMesh& mesh) { return evaluate(j, mesh_quadrature(mesh)); }

DerivativeIntegral first_shape_derivative_detail(const FunctionalSpec& j, const AnalyticSurface& surface,
                                                 const NormalSpeed& vn) {
    if (!j.z_prime) throw InvalidArgument(j.name + ": no shape derivative of the integrand");
    const auto& nodes = surface.quadrature();
    const long n = static_cast<long>(nodes.size());
    std::vector<double> terms(n), sizes(n);
    parallel_for(n, [&](long i) {
        const QuadratureNode& q = nodes[i];
        const SurfacePoint sp = surface.at(q.point);
        const NormalSpeedData d = vn.at(sp);
        const double z = j.z(LocalGeometry{q.point, q.normal, q.shape_operator, q.weight});
        const double zp = j.z_prime(sp, d), kz = sp.kappa * z * d.vn;
        terms[i] = q.weight * (zp + kz);
        sizes[i] = q.weight * (std::abs(zp) + std::abs(kz));
    });
    DerivativeIntegral out;
    out.value = blocked_sum(terms);
    out.magnitude = blocked_sum(sizes);
    return out;
}

double first_shape_derivative(const FunctionalSpec& j, const AnalyticSurface& surface, const NormalSpeed& vn) {
    return first_shape_derivative_detail(j, surface, vn).value;
}

double volume_enclosed(const AnalyticSurface& surface) {
    return integrate_nodes(surface.quadrature(), [](const QuadratureNode& n) { return n.point.dot(n.normal); }) / 3.0;
}

}  // namespace shapecalc
