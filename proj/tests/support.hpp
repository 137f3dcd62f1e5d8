#pragma once

#include <cstdint>
#include <vector>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/fields.hpp"
#include "shapecalc/random.hpp"

namespace shapecalc::test_support {

inline Vec3 random_vec(SplitMix& rng, double lo = -1.0, double hi = 1.0) {
    return Vec3(rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi));
}

inline Mat3 random_mat(SplitMix& rng) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    return m;
}

/// count quadrature nodes drawn with replacement.
inline std::vector<QuadratureNode> sample_nodes(const AnalyticSurface& s, int count, std::uint64_t seed) {
    SplitMix rng(seed);
    const auto& q = s.quadrature();
    std::vector<QuadratureNode> out;
    for (int i = 0; i < count; ++i) out.push_back(q[rng.next() % q.size()]);
    return out;
}

/// Random polynomial of (x - c)/scale so values stay O(1) on any surface.
inline AmbientScalarField scaled_polynomial(int degree, std::uint64_t seed, const AnalyticSurface& s) {
    const Polynomial p = Polynomial::random(degree, seed);
    const Vec3 c = s.shape().center;
    const double l = s.scale();
    return AmbientScalarField(
        [p, c, l](const Vec3& x) {
            const Jet j = p.jet((x - c) / l);
            return Jet(j.v, j.g / l, j.h / (l * l));
        },
        FieldCheck::skip);
}

inline std::vector<AnalyticSurface> builtin_surfaces() {
    return {make_sphere(1.0), make_ellipsoid(1.0, 1.3, 0.7), make_torus(2.0, 1.0)};
}

}  // namespace shapecalc::test_support
