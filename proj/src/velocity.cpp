#include "shapecalc/velocity.hpp"

#include <sstream>

#include "shapecalc/errors.hpp"

namespace shapecalc {

namespace {

VecJet unit(const VecJet& d) {
    const Jet inv = 1.0 / sqrt(dot(d, d));
    return {d[0] * inv, d[1] * inv, d[2] * inv};
}

VecJet shifted(const Vec3& x, const Vec3& c) {
    VecJet d = coordinates(x);
    for (int i = 0; i < 3; ++i) d[i].v -= c[i];
    return d;
}

}  // namespace

VelocityField::VelocityField(AmbientVectorField v, std::string name, Family family)
    : field_(std::move(v)), name_(std::move(name)), family_(family) {
    if (!field_) throw InvalidArgument("velocity field: empty evaluator");
}

VelocityField VelocityField::zero() {
    return VelocityField(AmbientVectorField::constant(Vec3::Zero()), "zero", Family::zero);
}

VelocityField VelocityField::radial() {
    return VelocityField(AmbientVectorField([](const Vec3& x) { return unit(coordinates(x)); }, FieldCheck::skip),
                         "radial", Family::radial);
}

VelocityField VelocityField::dilation() {
    return VelocityField(AmbientVectorField([](const Vec3& x) { return coordinates(x); }, FieldCheck::skip),
                         "dilation", Family::dilation);
}

VelocityField VelocityField::translation(const Vec3& d) {
    std::ostringstream os;
    os.precision(17);
    os << "translation(" << d[0] << "," << d[1] << "," << d[2] << ")";
    VelocityField v(AmbientVectorField::constant(d), os.str(), Family::translation);
    v.direction_ = d;
    return v;
}

VelocityField VelocityField::normal_inflation(const AnalyticSurface& surface) {
    const ShapeParameters sp = surface.shape();
    const double sign = sp.inward ? -1.0 : 1.0;
    AmbientVectorField::Evaluator f;
    switch (sp.kind) {
        case ShapeParameters::Kind::sphere:
            f = [c = sp.center, sign](const Vec3& x) {
                VecJet n = unit(shifted(x, c));
                for (Jet& j : n) j *= sign;
                return n;
            };
            break;
        case ShapeParameters::Kind::torus:
            f = [c = sp.center, major = sp.dims[0], sign](const Vec3& x) {
                const VecJet d = shifted(x, c);
                const Jet scale = major / sqrt(d[0] * d[0] + d[1] * d[1]);
                VecJet n = unit({d[0] - d[0] * scale, d[1] - d[1] * scale, d[2]});
                for (Jet& j : n) j *= sign;
                return n;
            };
            break;
        default:
            f = [ls = surface.level_set()](const Vec3& x) { return ls.normal_jets(x); };
            break;
    }
    VelocityField v(AmbientVectorField(std::move(f), FieldCheck::skip), "normal_inflation", Family::normal_inflation);
    v.inflated_ = sp;
    return v;
}

VelocityField VelocityField::rotation(const Vec3& axis, const Vec3& center) {
    return VelocityField(AmbientVectorField(
                             [axis, center](const Vec3& x) {
                                 const VecJet d = shifted(x, center);
                                 return VecJet{axis[1] * d[2] - axis[2] * d[1], axis[2] * d[0] - axis[0] * d[2],
                                               axis[0] * d[1] - axis[1] * d[0]};
                             },
                             FieldCheck::skip),
                         "rotation", Family::rotation);
}

VelocityField VelocityField::random_polynomial(int degree, std::uint64_t seed, double support, double length,
                                               const Vec3& center) {
    if (degree < 0) throw InvalidArgument("random_polynomial: degree must be non-negative");
    if (!(length > 0)) throw InvalidArgument("random_polynomial: length must be positive");
    if (support < 0) throw InvalidArgument("random_polynomial: support radius must be non-negative");
    const std::array<Polynomial, 3> p{Polynomial::random(degree, seed * 3 + 0), Polynomial::random(degree, seed * 3 + 1),
                                      Polynomial::random(degree, seed * 3 + 2)};
    auto f = [p, support, length, center](const Vec3& x) {
        const Vec3 y = (x - center) / length;
        VecJet out;
        for (int i = 0; i < 3; ++i) {
            const Jet j = p[i].jet(y);
            out[i] = Jet(j.v, j.g / length, j.h / (length * length));
        }
        if (support > 0) {
            const VecJet d = shifted(x, center);
            const Jet s = 1.0 - dot(d, d) / (support * support);
            const Jet cut = s.v > 0 ? pow(s, 4) : Jet(0.0);
            for (Jet& j : out) j = j * cut;
        }
        return out;
    };
    std::ostringstream os;
    os << "random_polynomial(" << degree << "," << seed << "," << support << ")";
    return VelocityField(AmbientVectorField(std::move(f), FieldCheck::skip), os.str(), Family::random_polynomial);
}

VelocityField VelocityField::tangential_part(const AnalyticSurface& surface, const AmbientVectorField& w,
                                             const std::string& name) {
    return VelocityField(AmbientVectorField(
                             [w, ls = surface.level_set()](const Vec3& x) {
                                 const VecJet n = ls.normal_jets(x);
                                 VecJet v = w.jet(x);
                                 const Jet vn = dot(v, n);
                                 for (int i = 0; i < 3; ++i) v[i] = v[i] - vn * n[i];
                                 return v;
                             },
                             FieldCheck::skip),
                         name);
}

void VelocityField::validate(const ValidationBox& box) const {
    for (int i = 0; i < 3; ++i)
        validate_scalar_evaluator([f = field_, i](const Vec3& x) { return f.jet(x)[i]; }, box,
                                  name_ + " component " + std::to_string(i));
}

}  // namespace shapecalc
