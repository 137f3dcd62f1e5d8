#pragma once

// Closed-form shape derivatives of geometric quantities and of tangential
// operators, evaluated pointwise on Γ from the normal speed v_n = V·n.

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/fields.hpp"

namespace shapecalc {

/// Tangential derivatives of v_n at one point of Γ.
struct NormalSpeedData {
    double vn = 0.0;
    Vec3 grad = Vec3::Zero();  // ∇_Γ v_n
    double lap = 0.0;          // Δ_Γ v_n
    Mat3 hess = Mat3::Zero();  // D²_Γ v_n
};

/// Scalar normal speed given through an ambient extension.
class NormalSpeed {
public:
    explicit NormalSpeed(AmbientScalarField vn) : vn_(std::move(vn)) {}

    static NormalSpeed constant(double c) { return NormalSpeed(AmbientScalarField::constant(c)); }
    /// v_n = V·ñ with the level-set normal extension ñ.
    static NormalSpeed from_velocity(const AnalyticSurface& surface, const AmbientVectorField& v);

    const AmbientScalarField& field() const { return vn_; }
    NormalSpeedData at(const SurfacePoint& sp) const;

private:
    AmbientScalarField vn_;
};

/// n′ = -∇_Γ v_n
Vec3 normal_prime(const SurfacePoint& sp, const NormalSpeedData& d);

/// κ′ = -Δ_Γ v_n - |D_Γ n|² v_n
double curvature_prime(const SurfacePoint& sp, const NormalSpeedData& d);
/// κ′ = -Δ_Γ v_n - v_n κ² + 2 v_n κ_g
double curvature_prime_via_gauss(const SurfacePoint& sp, const NormalSpeedData& d);

/// (D_Γ n)′ = -D²_Γ v_n + D_Γ n ∇_Γ v_n ⊗ n - v_n D_Γ n²
Mat3 shape_operator_prime(const SurfacePoint& sp, const NormalSpeedData& d);

/// (∇_Γ z)′ = ∇_Γ z′ + (n ⊗ ∇_Γ v_n - v_n D_Γ n) ∇_Γ z
Vec3 tangential_gradient_prime(const SurfacePoint& sp, const Jet& z, const Jet& z_prime, const NormalSpeedData& d);

/// (D_Γ w)′ = D_Γ w′ + D_Γ w (∇_Γ v_n ⊗ n - v_n D_Γ n)
Mat3 tangential_jacobian_prime(const SurfacePoint& sp, const VecJet& w, const VecJet& w_prime,
                               const NormalSpeedData& d);

/// (Div_Γ w)′ = Div_Γ w′ + (n ⊗ ∇_Γ v_n - v_n D_Γ n) : D_Γ w
double tangential_divergence_prime(const SurfacePoint& sp, const VecJet& w, const VecJet& w_prime,
                                   const NormalSpeedData& d);

/// (Δ_Γ z)′ = Δ_Γ z′ - 2 v_n D_Γ n : D²_Γ z + (κ ∇_Γ v_n - 2 D_Γ n ∇_Γ v_n - v_n ∇_Γ κ)·∇_Γ z
double laplace_beltrami_prime(const SurfacePoint& sp, const Jet& z, const Jet& z_prime, const NormalSpeedData& d);

/// I_p′ = -p (D²_Γ v_n : D_Γ n^{p-1} + v_n I_{p+1})
double trace_power_prime(const SurfacePoint& sp, int p, const NormalSpeedData& d);

/// i_1′ = -Δ_Γ v_n - v_n i_1² + 2 v_n i_2
double invariant_prime_1(const SurfacePoint& sp, const NormalSpeedData& d);
/// i_2′ = -i_1 Δ_Γ v_n + D²_Γ v_n : D_Γ n + v_n (3 i_3 - i_1 i_2)
double invariant_prime_2(const SurfacePoint& sp, const NormalSpeedData& d);

/// κ_g′ = -κ Δ_Γ v_n + D²_Γ v_n : D_Γ n - v_n κ κ_g
double gauss_curvature_prime(const SurfacePoint& sp, const NormalSpeedData& d);

/// (φ|_Γ)′ = ∂φ/∂n v_n for a fixed ambient φ.
double restriction_prime(const SurfacePoint& sp, const Jet& phi, const NormalSpeedData& d);

/// b′|_Γ = -v_n
double distance_prime_on_boundary(const NormalSpeedData& d);

// Surface-level overloads; x must lie on Γ.
Vec3 normal_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x);
double curvature_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x);
Mat3 shape_operator_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x);
double trace_power_prime(const AnalyticSurface& s, int p, const NormalSpeed& v, const Vec3& x);
double invariant_prime_1(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x);
double invariant_prime_2(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x);
double gauss_curvature_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x);
double restriction_prime(const AnalyticSurface& s, const AmbientScalarField& phi, const NormalSpeed& v,
                         const Vec3& x);

}  // namespace shapecalc
