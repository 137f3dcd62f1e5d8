#pragma once

// Second-order forward-mode jets: value, gradient and Hessian of a scalar
// function of three variables, propagated through arithmetic.

#include <array>
#include <cmath>

#include "shapecalc/tensor.hpp"

namespace shapecalc {

struct Jet {
    double v = 0.0;
    Vec3 g = Vec3::Zero();
    Mat3 h = Mat3::Zero();

    Jet() = default;
    Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly
    Jet(double value, const Vec3& grad, const Mat3& hess) : v(value), g(grad), h(hess) {}

    /// The coordinate function x_i evaluated at p.
    static Jet variable(const Vec3& p, int i) {
        Jet j(p[i]);
        j.g[i] = 1.0;
        return j;
    }

    Jet& operator+=(const Jet& o) {
        v += o.v;
        g += o.g;
        h += o.h;
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        v -= o.v;
        g -= o.g;
        h -= o.h;
        return *this;
    }
    Jet& operator*=(double s) {
        v *= s;
        g *= s;
        h *= s;
        return *this;
    }
};

using VecJet = std::array<Jet, 3>;
using TensorJet = std::array<std::array<Jet, 3>, 3>;

inline Jet operator-(const Jet& a) { return Jet(-a.v, -a.g, -a.h); }
inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }

inline Jet operator*(const Jet& a, const Jet& b) {
    return Jet(a.v * b.v, a.g * b.v + b.g * a.v,
               a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose());
}

/// Composition f∘a for a scalar function with derivatives d0, d1, d2 at a.v.
inline Jet chain(const Jet& a, double d0, double d1, double d2) {
    return Jet(d0, d1 * a.g, d1 * a.h + d2 * a.g * a.g.transpose());
}

inline Jet reciprocal(const Jet& a) {
    const double r = 1.0 / a.v;
    return chain(a, r, -r * r, 2.0 * r * r * r);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
inline Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
inline Jet operator/(double s, const Jet& b) { return s * reciprocal(b); }

inline Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet sin(const Jet& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, s, c, -s);
}

inline Jet cos(const Jet& a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return chain(a, c, -s, -c);
}

inline Jet exp(const Jet& a) {
    const double e = std::exp(a.v);
    return chain(a, e, e, e);
}

inline Jet pow(const Jet& a, int k) {
    if (k == 0) return Jet(1.0);
    const double p1 = std::pow(a.v, k - 1);
    const double p2 = k == 1 ? 0.0 : std::pow(a.v, k - 2);
    return chain(a, p1 * a.v, k * p1, k * (k - 1) * p2);
}

inline Jet dot(const VecJet& a, const VecJet& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline VecJet coordinates(const Vec3& p) {
    return {Jet::variable(p, 0), Jet::variable(p, 1), Jet::variable(p, 2)};
}

inline VecJet constant_vec(const Vec3& c) { return {Jet(c[0]), Jet(c[1]), Jet(c[2])}; }

inline Vec3 value_of(const VecJet& w) { return Vec3(w[0].v, w[1].v, w[2].v); }

/// Jacobian DW with rows the gradients of the components.
inline Mat3 jacobian_of(const VecJet& w) {
    Mat3 d;
    for (int i = 0; i < 3; ++i) d.row(i) = w[i].g.transpose();
    return d;
}

inline Mat3 value_of(const TensorJet& s) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = s[i][j].v;
    return m;
}

}  // namespace shapecalc
