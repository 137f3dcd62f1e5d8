#include "shapecalc/shape_derivatives.hpp"

#include "shapecalc/errors.hpp"
#include "shapecalc/tangential.hpp"

namespace shapecalc {

NormalSpeed NormalSpeed::from_velocity(const AnalyticSurface& surface, const AmbientVectorField& v) {
    return NormalSpeed(AmbientScalarField(
        [v, ls = surface.level_set()](const Vec3& x) { return dot(v.jet(x), ls.normal_jets(x)); },
        FieldCheck::skip));
}

NormalSpeedData NormalSpeed::at(const SurfacePoint& sp) const {
    const Jet j = vn_.jet(sp.x);
    NormalSpeedData d;
    d.vn = j.v;
    d.grad = tangential_gradient(sp, j);
    d.lap = laplace_beltrami(sp, j);
    d.hess = second_tangential(sp, j);
    return d;
}

Vec3 normal_prime(const SurfacePoint&, const NormalSpeedData& d) { return -d.grad; }

double curvature_prime(const SurfacePoint& sp, const NormalSpeedData& d) {
    return -d.lap - sp.shape.squaredNorm() * d.vn;
}

double curvature_prime_via_gauss(const SurfacePoint& sp, const NormalSpeedData& d) {
    const double k = sp.kappa;
    const double kg = 0.5 * (k * k - sp.shape.squaredNorm());
    return -d.lap - d.vn * k * k + 2 * d.vn * kg;
}

Mat3 shape_operator_prime(const SurfacePoint& sp, const NormalSpeedData& d) {
    return -d.hess + (sp.shape * d.grad) * sp.normal.transpose() - d.vn * sp.shape * sp.shape;
}

Vec3 tangential_gradient_prime(const SurfacePoint& sp, const Jet& z, const Jet& z_prime,
                               const NormalSpeedData& d) {
    const Mat3 m = sp.normal * d.grad.transpose() - d.vn * sp.shape;
    return tangential_gradient(sp, z_prime) + m * tangential_gradient(sp, z);
}

Mat3 tangential_jacobian_prime(const SurfacePoint& sp, const VecJet& w, const VecJet& w_prime,
                               const NormalSpeedData& d) {
    const Mat3 m = d.grad * sp.normal.transpose() - d.vn * sp.shape;
    return tangential_jacobian(sp, w_prime) + tangential_jacobian(sp, w) * m;
}

double tangential_divergence_prime(const SurfacePoint& sp, const VecJet& w, const VecJet& w_prime,
                                   const NormalSpeedData& d) {
    const Mat3 m = sp.normal * d.grad.transpose() - d.vn * sp.shape;
    return tangential_divergence(sp, w_prime) + frobenius<3>(m, tangential_jacobian(sp, w));
}

double laplace_beltrami_prime(const SurfacePoint& sp, const Jet& z, const Jet& z_prime, const NormalSpeedData& d) {
    const Vec3 gk = curvature_gradient(sp);
    const Vec3 c = sp.kappa * d.grad - 2 * sp.shape * d.grad - d.vn * gk;
    return laplace_beltrami(sp, z_prime) - 2 * d.vn * frobenius<3>(sp.shape, second_tangential(sp, z)) +
           c.dot(tangential_gradient(sp, z));
}

double trace_power_prime(const SurfacePoint& sp, int p, const NormalSpeedData& d) {
    if (p < 1) throw InvalidArgument("trace_power_prime: p must be at least 1");
    Mat3 power = Mat3::Identity();
    for (int k = 1; k < p; ++k) power = power * sp.shape;
    const double next = (power * sp.shape * sp.shape).trace();
    return -p * (frobenius<3>(d.hess, power) + d.vn * next);
}

double invariant_prime_1(const SurfacePoint& sp, const NormalSpeedData& d) {
    const double i1 = sp.kappa;
    const double i2 = 0.5 * (i1 * i1 - sp.shape.squaredNorm());
    return -d.lap - d.vn * i1 * i1 + 2 * d.vn * i2;
}

double invariant_prime_2(const SurfacePoint& sp, const NormalSpeedData& d) {
    const Mat3& s = sp.shape;
    const double I1 = s.trace(), I2 = (s * s).trace(), I3 = (s * s * s).trace();
    const double i2 = 0.5 * (I1 * I1 - I2);
    const double i3 = (I1 * I1 * I1 - 3 * I1 * I2 + 2 * I3) / 6.0;
    return -I1 * d.lap + frobenius<3>(d.hess, s) + d.vn * (3 * i3 - I1 * i2);
}

double gauss_curvature_prime(const SurfacePoint& sp, const NormalSpeedData& d) {
    const double k = sp.kappa;
    const double kg = 0.5 * (k * k - sp.shape.squaredNorm());
    return -k * d.lap + frobenius<3>(d.hess, sp.shape) - d.vn * k * kg;
}

double restriction_prime(const SurfacePoint& sp, const Jet& phi, const NormalSpeedData& d) {
    return phi.g.dot(sp.normal) * d.vn;
}

double distance_prime_on_boundary(const NormalSpeedData& d) { return -d.vn; }

Vec3 normal_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return normal_prime(sp, v.at(sp));
}

double curvature_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return curvature_prime(sp, v.at(sp));
}

Mat3 shape_operator_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return shape_operator_prime(sp, v.at(sp));
}

double trace_power_prime(const AnalyticSurface& s, int p, const NormalSpeed& v, const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return trace_power_prime(sp, p, v.at(sp));
}

double invariant_prime_1(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return invariant_prime_1(sp, v.at(sp));
}

double invariant_prime_2(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return invariant_prime_2(sp, v.at(sp));
}

double gauss_curvature_prime(const AnalyticSurface& s, const NormalSpeed& v, const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return gauss_curvature_prime(sp, v.at(sp));
}

double restriction_prime(const AnalyticSurface& s, const AmbientScalarField& phi, const NormalSpeed& v,
                         const Vec3& x) {
    const SurfacePoint sp = s.at(x);
    return restriction_prime(sp, phi.jet(x), v.at(sp));
}

}  // namespace shapecalc
