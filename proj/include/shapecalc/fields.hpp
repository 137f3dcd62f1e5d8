#pragma once

// Ambient fields defined on a neighbourhood of a surface. A field is an
// evaluator returning jets (value + first + second derivatives), so every
// tangential operator can be computed from any C² extension.

#include <functional>
#include <memory>
#include <string>

#include "shapecalc/jet.hpp"
#include "shapecalc/polynomial.hpp"

namespace shapecalc {

enum class FieldCheck { validate, skip };

/// Where and how strictly evaluator consistency is probed.
struct ValidationBox {
    Vec3 center = Vec3::Zero();
    double scale = 1.0;
    int samples = 6;
    double tolerance = 1e-6;
};

class AmbientScalarField {
public:
    using Evaluator = std::function<Jet(const Vec3&)>;

    AmbientScalarField() = default;
    explicit AmbientScalarField(Evaluator f, FieldCheck check = FieldCheck::validate,
                                const ValidationBox& box = {});

    static AmbientScalarField constant(double c);
    static AmbientScalarField polynomial(Polynomial p);

    Jet jet(const Vec3& x) const { return eval_(x); }
    double value(const Vec3& x) const { return eval_(x).v; }
    Vec3 gradient(const Vec3& x) const { return eval_(x).g; }
    Mat3 hessian(const Vec3& x) const { return eval_(x).h; }

    explicit operator bool() const { return static_cast<bool>(eval_); }

private:
    Evaluator eval_;
};

class AmbientVectorField {
public:
    using Evaluator = std::function<VecJet(const Vec3&)>;

    AmbientVectorField() = default;
    explicit AmbientVectorField(Evaluator f, FieldCheck check = FieldCheck::validate,
                                const ValidationBox& box = {});

    static AmbientVectorField constant(const Vec3& c);
    static AmbientVectorField polynomial(const std::array<Polynomial, 3>& p);

    VecJet jet(const Vec3& x) const { return eval_(x); }
    Vec3 value(const Vec3& x) const { return value_of(eval_(x)); }
    Mat3 jacobian(const Vec3& x) const { return jacobian_of(eval_(x)); }

    /// Scalar field of one component.
    AmbientScalarField component(int i) const;

    explicit operator bool() const { return static_cast<bool>(eval_); }

private:
    Evaluator eval_;
};

/// Tensor field S(x); only first derivatives of the entries are used.
class AmbientTensorField {
public:
    using Evaluator = std::function<TensorJet(const Vec3&)>;

    AmbientTensorField() = default;
    explicit AmbientTensorField(Evaluator f) : eval_(std::move(f)) {}

    TensorJet jet(const Vec3& x) const { return eval_(x); }
    Mat3 value(const Vec3& x) const { return value_of(eval_(x)); }

private:
    Evaluator eval_;
};

/// Finite-difference consistency of a jet evaluator: gradient against
/// central differences of the value and Hessian against differences of the
/// gradient, step h = 1e-5·scale. Returns the largest relative mismatch.
double field_consistency_error(const AmbientScalarField::Evaluator& f, const ValidationBox& box);

/// Throws InvalidArgument when field_consistency_error exceeds the tolerance.
void validate_scalar_evaluator(const AmbientScalarField::Evaluator& f, const ValidationBox& box,
                               const std::string& what);

}  // namespace shapecalc
