#include "shapecalc/invariants.hpp"

#include "shapecalc/kernels.hpp"

namespace shapecalc {

std::array<double, 4> invariants_from_traces(const std::vector<double>& I) {
    if (I.size() < 4) throw InvalidArgument("invariants_from_traces: need I_1..I_4");
    const double a = I[0], b = I[1], c = I[2], d = I[3];
    return {a, 0.5 * (a * a - b), (a * a * a - 3 * a * b + 2 * c) / 6.0,
            (a * a * a * a - 6 * a * a * b + 3 * b * b + 8 * a * c - 6 * d) / 24.0};
}

InvariantBundle invariant_bundle(const Mat3& s) {
    InvariantBundle b;
    const std::vector<double> I = trace_powers<3>(s, 4);
    for (int p = 0; p < 4; ++p) b.I[p] = I[p];
    b.i = invariants_from_traces(I);
    b.kappa = b.i[0];
    b.kappa_g = b.i[1];
    return b;
}

double mean_curvature(const AnalyticSurface& surface, const Vec3& x) { return surface.at(x).kappa; }

double gauss_curvature(const AnalyticSurface& surface, const Vec3& x) {
    return gauss_curvature<3>(surface.at(x).shape);
}

double total_gauss(const AnalyticSurface& surface) {
    return integrate_nodes(surface.quadrature(),
                           [](const QuadratureNode& n) { return gauss_curvature<3>(n.shape_operator); });
}

}  // namespace shapecalc
