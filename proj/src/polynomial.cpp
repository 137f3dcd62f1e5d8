#include "shapecalc/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "shapecalc/errors.hpp"
#include "shapecalc/random.hpp"

namespace shapecalc {

Polynomial Polynomial::constant(double c) {
    Polynomial p;
    p.add_term({0, 0, 0}, c);
    return p;
}

Polynomial Polynomial::coordinate(int axis) {
    Polynomial p;
    Exponent e{0, 0, 0};
    e[axis] = 1;
    p.add_term(e, 1.0);
    return p;
}

Polynomial Polynomial::random(int degree, std::uint64_t seed, double amplitude) {
    SplitMix rng(seed);
    Polynomial p;
    for (int total = 0; total <= degree; ++total)
        for (int a = total; a >= 0; --a)
            for (int b = total - a; b >= 0; --b)
                p.add_term({a, b, total - a - b}, amplitude * rng.uniform(-1.0, 1.0));
    return p;
}

void Polynomial::add_term(const Exponent& e, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

namespace {

// powers[k][i] = p_k^i for i <= max exponent
struct PowerTable {
    std::array<std::array<double, 16>, 3> pw{};
    explicit PowerTable(const Vec3& p, int max_deg) {
        if (max_deg > 15) throw InvalidArgument("polynomial degree above 15 is not supported");
        for (int k = 0; k < 3; ++k) {
            pw[k][0] = 1.0;
            for (int i = 1; i <= max_deg; ++i) pw[k][i] = pw[k][i - 1] * p[k];
        }
    }
    double at(int k, int e) const { return e < 0 ? 0.0 : pw[k][e]; }
};

}  // namespace

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

double Polynomial::operator()(const Vec3& p) const {
    const PowerTable t(p, degree());
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += c * t.at(0, e[0]) * t.at(1, e[1]) * t.at(2, e[2]);
    return s;
}

Jet Polynomial::jet(const Vec3& p) const {
    const PowerTable t(p, degree());
    Jet out;
    for (const auto& [e, c] : terms_) {
        const double m[3] = {t.at(0, e[0]), t.at(1, e[1]), t.at(2, e[2])};
        // first and second derivative factors of each univariate monomial
        double d1[3], d2[3];
        for (int k = 0; k < 3; ++k) {
            d1[k] = e[k] * t.at(k, e[k] - 1);
            d2[k] = e[k] * (e[k] - 1) * t.at(k, e[k] - 2);
        }
        out.v += c * m[0] * m[1] * m[2];
        out.g[0] += c * d1[0] * m[1] * m[2];
        out.g[1] += c * m[0] * d1[1] * m[2];
        out.g[2] += c * m[0] * m[1] * d1[2];
        out.h(0, 0) += c * d2[0] * m[1] * m[2];
        out.h(1, 1) += c * m[0] * d2[1] * m[2];
        out.h(2, 2) += c * m[0] * m[1] * d2[2];
        const double xy = c * d1[0] * d1[1] * m[2];
        const double xz = c * d1[0] * m[1] * d1[2];
        const double yz = c * m[0] * d1[1] * d1[2];
        out.h(0, 1) += xy;
        out.h(1, 0) += xy;
        out.h(0, 2) += xz;
        out.h(2, 0) += xz;
        out.h(1, 2) += yz;
        out.h(2, 1) += yz;
    }
    return out;
}

Polynomial Polynomial::derivative(int axis) const {
    Polynomial d;
    for (const auto& [e, c] : terms_) {
        if (e[axis] == 0) continue;
        Exponent f = e;
        f[axis] -= 1;
        d.add_term(f, c * e[axis]);
    }
    return d;
}

VecJet Polynomial::gradient_jets(const Vec3& p) const {
    return {derivative(0).jet(p), derivative(1).jet(p), derivative(2).jet(p)};
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return r;
}

std::string Polynomial::to_string() const {
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c;
        const char* names = "xyz";
        for (int k = 0; k < 3; ++k)
            if (e[k] > 0) os << '*' << names[k] << '^' << e[k];
    }
    if (first) os << '0';
    return os.str();
}

}  // namespace shapecalc
