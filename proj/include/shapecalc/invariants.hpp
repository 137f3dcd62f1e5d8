#pragma once

// Trace powers I_p = tr(Sᵖ) of the shape operator and the invariants i_k
// recovered from them by Newton's identities.

#include <array>
#include <cmath>
#include <vector>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/errors.hpp"
#include "shapecalc/tensor.hpp"

namespace shapecalc {

struct InvariantBundle {
    std::array<double, 4> I{};  // I_1..I_4
    std::array<double, 4> i{};  // i_1..i_4
    double kappa = 0.0;
    double kappa_g = 0.0;
};

/// I_p = tr(Sᵖ) for p = 1..p_max by repeated multiplication.
template <int N>
std::vector<double> trace_powers(const TensorN<N>& s, int p_max = 4) {
    if (p_max < 1) throw InvalidArgument("trace_powers: p_max must be at least 1");
    if ((s - s.transpose()).norm() > 1e-8 * (1.0 + s.norm()))
        throw InvalidArgument("trace_powers: shape operator is not symmetric");
    std::vector<double> out;
    TensorN<N> power = s;
    for (int p = 1; p <= p_max; ++p) {
        out.push_back(power.trace());
        power = power * s;
    }
    return out;
}

/// i_1..i_4 from I_1..I_4.
std::array<double, 4> invariants_from_traces(const std::vector<double>& I);

/// κ = tr S
template <int N>
double mean_curvature(const TensorN<N>& s) {
    return s.trace();
}

/// κ_g = (κ² - |S|²)/2; defined for surfaces in R³ only.
template <int N>
double gauss_curvature(const TensorN<N>& s) {
    if constexpr (N != 3) {
        throw InvalidArgument("gauss curvature requires ambient dimension 3");
    } else {
        const double k = s.trace();
        return 0.5 * (k * k - s.squaredNorm());
    }
}

InvariantBundle invariant_bundle(const Mat3& s);

double mean_curvature(const AnalyticSurface& surface, const Vec3& x);
double gauss_curvature(const AnalyticSurface& surface, const Vec3& x);

/// ∫_Γ κ_g by quadrature.
double total_gauss(const AnalyticSurface& surface);

}  // namespace shapecalc
