#pragma once

// Tangential differential operators on analytic surfaces. Every operator takes
// an ambient extension (as a jet) and the surface geometry at a point of Γ;
// results do not depend on the extension chosen.

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/fields.hpp"

namespace shapecalc {

/// ∇_Γ f = P ∇F
Vec3 tangential_gradient(const SurfacePoint& sp, const Jet& f);

/// D_Γ w = DW P
Mat3 tangential_jacobian(const SurfacePoint& sp, const VecJet& w);

/// Div_Γ w = P : DW
double tangential_divergence(const SurfacePoint& sp, const VecJet& w);

/// Δ_Γ f = ΔF - n·D²F n - κ ∂F/∂n
double laplace_beltrami(const SurfacePoint& sp, const Jet& f);

/// D²_Γ f = D_Γ(∇_Γ f), computed as D(P̃∇F) P with the level-set extension
/// P̃ = I - ñ⊗ñ. Not symmetric in general; right-annihilates n.
Mat3 second_tangential(const SurfacePoint& sp, const Jet& f);

/// (Div_Γ S)·e_i = Div_Γ(Sᵀ e_i)
Vec3 tangential_divergence(const SurfacePoint& sp, const TensorJet& s);

/// Componentwise Laplace-Beltrami of a vector field.
Vec3 vector_laplace_beltrami(const SurfacePoint& sp, const VecJet& w);

/// ∇_Γ κ = P Δ_Γ n, with Δ_Γ n applied to the level-set normal extension.
Vec3 curvature_gradient(const SurfacePoint& sp);

/// Jets of the extended projector P̃ = I - ñ⊗ñ.
TensorJet extended_projector(const SurfacePoint& sp);

// Field-and-surface convenience overloads; x must lie on Γ.
Vec3 tangential_gradient(const AnalyticSurface& s, const AmbientScalarField& f, const Vec3& x);
Mat3 tangential_jacobian(const AnalyticSurface& s, const AmbientVectorField& w, const Vec3& x);
double tangential_divergence(const AnalyticSurface& s, const AmbientVectorField& w, const Vec3& x);
double laplace_beltrami(const AnalyticSurface& s, const AmbientScalarField& f, const Vec3& x);
Mat3 second_tangential(const AnalyticSurface& s, const AmbientScalarField& f, const Vec3& x);
Vec3 tangential_divergence(const AnalyticSurface& s, const AmbientTensorField& t, const Vec3& x);

/// Level-set normal extension ñ = ∇phi/|∇phi| as an ambient field.
AmbientVectorField normal_extension(const AnalyticSurface& s);

}  // namespace shapecalc
