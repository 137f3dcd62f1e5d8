#include "shapecalc/fields.hpp"

#include <algorithm>
#include <cmath>

#include "shapecalc/errors.hpp"
#include "shapecalc/random.hpp"

namespace shapecalc {

double field_consistency_error(const AmbientScalarField::Evaluator& f, const ValidationBox& box) {
    SplitMix rng(0x5eedf1e1dull);
    const double h = 1e-5 * box.scale;
    double worst = 0.0;
    for (int s = 0; s < box.samples; ++s) {
        Vec3 x;
        for (int k = 0; k < 3; ++k) x[k] = box.center[k] + box.scale * rng.uniform(-1.0, 1.0);
        const Jet j = f(x);
        if (!std::isfinite(j.v)) continue;
        Vec3 fd_grad;
        Mat3 fd_hess;
        for (int k = 0; k < 3; ++k) {
            Vec3 e = Vec3::Zero();
            e[k] = h;
            const Jet jp = f(x + e), jm = f(x - e);
            fd_grad[k] = (jp.v - jm.v) / (2 * h);
            fd_hess.col(k) = (jp.g - jm.g) / (2 * h);
        }
        const double gscale = 1.0 + j.g.norm() + std::abs(j.v) / box.scale;
        const double hscale = 1.0 + j.h.norm() + j.g.norm() / box.scale;
        worst = std::max(worst, (fd_grad - j.g).norm() / gscale);
        worst = std::max(worst, (fd_hess - j.h).norm() / hscale);
    }
    return worst;
}

void validate_scalar_evaluator(const AmbientScalarField::Evaluator& f, const ValidationBox& box,
                               const std::string& what) {
    const double err = field_consistency_error(f, box);
    if (!(err <= box.tolerance))
        throw InvalidArgument(what + ": derivative evaluators inconsistent with value (error " +
                              std::to_string(err) + ")");
}

AmbientScalarField::AmbientScalarField(Evaluator f, FieldCheck check, const ValidationBox& box)
    : eval_(std::move(f)) {
    if (!eval_) throw InvalidArgument("scalar field: empty evaluator");
    if (check == FieldCheck::validate) validate_scalar_evaluator(eval_, box, "scalar field");
}

AmbientScalarField AmbientScalarField::constant(double c) {
    return AmbientScalarField([c](const Vec3&) { return Jet(c); }, FieldCheck::skip);
}

AmbientScalarField AmbientScalarField::polynomial(Polynomial p) {
    return AmbientScalarField([p = std::move(p)](const Vec3& x) { return p.jet(x); }, FieldCheck::skip);
}

AmbientVectorField::AmbientVectorField(Evaluator f, FieldCheck check, const ValidationBox& box)
    : eval_(std::move(f)) {
    if (!eval_) throw InvalidArgument("vector field: empty evaluator");
    if (check == FieldCheck::validate)
        for (int i = 0; i < 3; ++i)
            validate_scalar_evaluator([this, i](const Vec3& x) { return eval_(x)[i]; }, box,
                                      "vector field component " + std::to_string(i));
}

AmbientVectorField AmbientVectorField::constant(const Vec3& c) {
    return AmbientVectorField([c](const Vec3&) { return constant_vec(c); }, FieldCheck::skip);
}

AmbientVectorField AmbientVectorField::polynomial(const std::array<Polynomial, 3>& p) {
    return AmbientVectorField(
        [p](const Vec3& x) { return VecJet{p[0].jet(x), p[1].jet(x), p[2].jet(x)}; }, FieldCheck::skip);
}

AmbientScalarField AmbientVectorField::component(int i) const {
    return AmbientScalarField([f = eval_, i](const Vec3& x) { return f(x)[i]; }, FieldCheck::skip);
}

}  // namespace shapecalc
