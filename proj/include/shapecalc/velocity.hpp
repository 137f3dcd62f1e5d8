#pragma once

// Autonomous velocity fields v(x) driving the flow ẋ = v(x), with the named
// families used by the CLI and the oracles.

#include <cstdint>
#include <optional>
#include <string>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/fields.hpp"

namespace shapecalc {

class VelocityField {
public:
    enum class Family { generic, zero, radial, dilation, translation, normal_inflation, rotation, random_polynomial };

    VelocityField(AmbientVectorField v, std::string name, Family family = Family::generic);

    static VelocityField zero();
    /// x/|x|
    static VelocityField radial();
    /// x
    static VelocityField dilation();
    static VelocityField translation(const Vec3& d);
    /// Unit normal speed off the surface: the exact ∇b for spheres and tori,
    /// the level-set normal extension otherwise.
    static VelocityField normal_inflation(const AnalyticSurface& surface);
    /// axis × (x - center)
    static VelocityField rotation(const Vec3& axis, const Vec3& center = Vec3::Zero());
    /// Components are seeded random polynomials of (x - center)/length; with
    /// support > 0 they are multiplied by the C³ cutoff (1 - |x-center|²/support²)⁴.
    static VelocityField random_polynomial(int degree, std::uint64_t seed, double support = 0.0, double length = 1.0,
                                           const Vec3& center = Vec3::Zero());
    /// P̃ w with the level-set projector, tangent to Γ on Γ.
    static VelocityField tangential_part(const AnalyticSurface& surface, const AmbientVectorField& w,
                                         const std::string& name = "tangential");

    VecJet jet(const Vec3& x) const { return field_.jet(x); }
    Vec3 value(const Vec3& x) const { return field_.value(x); }
    Mat3 jacobian(const Vec3& x) const { return field_.jacobian(x); }
    const AmbientVectorField& field() const { return field_; }
    const std::string& name() const { return name_; }
    Family family() const { return family_; }
    /// Translation vector for the translation family.
    const Vec3& direction() const { return direction_; }
    /// Surface a normal inflation was built for.
    const std::optional<ShapeParameters>& inflated_shape() const { return inflated_; }

    /// Throws InvalidArgument when the jets disagree with finite differences.
    void validate(const ValidationBox& box) const;

private:
    AmbientVectorField field_;
    std::string name_;
    Family family_;
    Vec3 direction_ = Vec3::Zero();
    std::optional<ShapeParameters> inflated_;
};

}  // namespace shapecalc
