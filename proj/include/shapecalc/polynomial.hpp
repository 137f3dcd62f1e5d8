#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "shapecalc/jet.hpp"

namespace shapecalc {

/// Sparse real polynomial in (x, y, z). Derivatives of every order are exact,
/// which is what level sets need: normals and shape operators use second
/// derivatives, and the curvature gradient uses third.
class Polynomial {
public:
    using Exponent = std::array<int, 3>;

    Polynomial() = default;
    static Polynomial constant(double c);
    static Polynomial coordinate(int axis);

    /// Random polynomial of total degree <= degree with coefficients uniform
    /// in [-amplitude, amplitude], fully determined by seed.
    static Polynomial random(int degree, std::uint64_t seed, double amplitude = 1.0);

    double operator()(const Vec3& p) const;
    Jet jet(const Vec3& p) const;
    Polynomial derivative(int axis) const;

    /// Jets of the three first partials, i.e. value/gradient/Hessian of ∇p.
    VecJet gradient_jets(const Vec3& p) const;

    int degree() const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponent, double>& terms() const { return terms_; }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator*=(double s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a += b * -1.0; }
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

private:
    void add_term(const Exponent& e, double c);
    std::map<Exponent, double> terms_;
};

}  // namespace shapecalc
