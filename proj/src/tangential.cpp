#include "shapecalc/tangential.hpp"

namespace shapecalc {

Vec3 tangential_gradient(const SurfacePoint& sp, const Jet& f) { return sp.projector * f.g; }

Mat3 tangential_jacobian(const SurfacePoint& sp, const VecJet& w) { return jacobian_of(w) * sp.projector; }

double tangential_divergence(const SurfacePoint& sp, const VecJet& w) {
    return frobenius<3>(sp.projector, jacobian_of(w));
}

double laplace_beltrami(const SurfacePoint& sp, const Jet& f) {
    const Vec3& n = sp.normal;
    return f.h.trace() - n.dot(f.h * n) - sp.kappa * f.g.dot(n);
}

Mat3 second_tangential(const SurfacePoint& sp, const Jet& f) {
    const Vec3& n = sp.normal;
    const Mat3& dn = sp.normal_jacobian;
    // D(P̃∇F) = D²F - ñ ⊗ (Dñᵀ∇F + D²F ñ) - (ñ·∇F) Dñ
    const Mat3 d = f.h - n * (dn.transpose() * f.g + f.h * n).transpose() - n.dot(f.g) * dn;
    return d * sp.projector;
}

Vec3 tangential_divergence(const SurfacePoint& sp, const TensorJet& s) {
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) acc += sp.projector.row(j).dot(s[i][j].g);
        out[i] = acc;
    }
    return out;
}

Vec3 vector_laplace_beltrami(const SurfacePoint& sp, const VecJet& w) {
    return Vec3(laplace_beltrami(sp, w[0]), laplace_beltrami(sp, w[1]), laplace_beltrami(sp, w[2]));
}

Vec3 curvature_gradient(const SurfacePoint& sp) { return sp.projector * vector_laplace_beltrami(sp, sp.normal_jets); }

TensorJet extended_projector(const SurfacePoint& sp) {
    TensorJet p;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p[i][j] = Jet(i == j ? 1.0 : 0.0) - sp.normal_jets[i] * sp.normal_jets[j];
    return p;
}

Vec3 tangential_gradient(const AnalyticSurface& s, const AmbientScalarField& f, const Vec3& x) {
    return tangential_gradient(s.at(x), f.jet(x));
}

Mat3 tangential_jacobian(const AnalyticSurface& s, const AmbientVectorField& w, const Vec3& x) {
    return tangential_jacobian(s.at(x), w.jet(x));
}

double tangential_divergence(const AnalyticSurface& s, const AmbientVectorField& w, const Vec3& x) {
    return tangential_divergence(s.at(x), w.jet(x));
}

double laplace_beltrami(const AnalyticSurface& s, const AmbientScalarField& f, const Vec3& x) {
    return laplace_beltrami(s.at(x), f.jet(x));
}

Mat3 second_tangential(const AnalyticSurface& s, const AmbientScalarField& f, const Vec3& x) {
    return second_tangential(s.at(x), f.jet(x));
}

Vec3 tangential_divergence(const AnalyticSurface& s, const AmbientTensorField& t, const Vec3& x) {
    return tangential_divergence(s.at(x), t.jet(x));
}

AmbientVectorField normal_extension(const AnalyticSurface& s) {
    return AmbientVectorField(
        [ls = s.level_set()](const Vec3& x) { return ls.normal_jets(x); },
        FieldCheck::skip);
}

}  // namespace shapecalc
