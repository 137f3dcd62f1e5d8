#pragma once

// Boundary functionals J(Γ) = ∫_Γ z and their first shape derivatives
// dJ(Γ; V) = ∫_Γ z′ + κ z v_n.

#include <functional>
#include <string>
#include <vector>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/mesh.hpp"
#include "shapecalc/shape_derivatives.hpp"

namespace shapecalc {

enum class BuiltinFunctional { area, willmore, spontaneous, total_gauss };

struct FunctionalSpec {
    std::string name;
    BuiltinFunctional kind = BuiltinFunctional::area;
    double kappa0 = 0.0;
    /// Integrand z from the local geometry.
    std::function<double(const LocalGeometry&)> z;
    /// Pointwise shape derivative z′(Γ, V).
    std::function<double(const SurfacePoint&, const NormalSpeedData&)> z_prime;
};

/// area: z = 1; willmore: z = κ²/2; spontaneous: z = (κ - κ0)²/2; total_gauss: z = κ_g.
FunctionalSpec make_functional(BuiltinFunctional kind, double kappa0 = 0.0);

/// "area", "willmore", "spontaneous" / "spontaneous(k0)", "total_gauss".
FunctionalSpec functional_by_name(const std::string& name);

/// Σ weight · z(node)
double evaluate(const FunctionalSpec& j, const std::vector<LocalGeometry>& nodes);
double evaluate(const FunctionalSpec& j, const AnalyticSurface& surface);
double evaluate(const FunctionalSpec& j, const TriMesh& mesh);

struct DerivativeIntegral {
    double value = 0.0;
    /// ∫ |z′| + |κ z v_n|, the scale against which cancellation is judged.
    double magnitude = 0.0;
};

DerivativeIntegral first_shape_derivative_detail(const FunctionalSpec& j, const AnalyticSurface& surface,
                                                 const NormalSpeed& vn);
double first_shape_derivative(const FunctionalSpec& j, const AnalyticSurface& surface, const NormalSpeed& vn);

/// (1/3) ∫_Γ x·n
double volume_enclosed(const AnalyticSurface& surface);

std::vector<LocalGeometry> local_geometry(const AnalyticSurface& surface);

}  // namespace shapecalc
