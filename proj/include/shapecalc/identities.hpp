#pragma once

// Numerical checks of the tangential calculus identities on an analytic
// surface, driven by seeded random polynomial fields.

#include <cstdint>
#include <string>
#include <vector>

#include "shapecalc/analytic_surface.hpp"

namespace shapecalc {

struct IdentityCheck {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass() const { return max_error <= tolerance; }
};

struct IdentityOptions {
    std::uint64_t seed = 1;
    int fields = 5;        // random field sets per check
    int points = 40;       // sample nodes per field set
    int degree = 2;
    double tolerance = 1e-8;
};

/// Rows: unit_normal, shape_normal, shape_symmetry, product_rule_i .. _vi,
/// divergence_theorem, div_formula, curvature_gradient, gauss_bonnet.
/// Pointwise errors are relative to max(1, largest term).
std::vector<IdentityCheck> tangential_identity_suite(const AnalyticSurface& surface, const IdentityOptions& opt = {});

/// 2 for spheres and ellipsoids, 0 for tori.
int euler_characteristic(const AnalyticSurface& surface);

}  // namespace shapecalc
