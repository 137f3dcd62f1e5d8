#pragma once

// Small fixed-size vector/tensor algebra. Tensors are N x N matrices acting on
// ambient vectors; the dimension is a template parameter (2 or 3).

#include <Eigen/Dense>

namespace shapecalc {

template <int N>
using VecN = Eigen::Matrix<double, N, 1>;

template <int N>
using TensorN = Eigen::Matrix<double, N, N>;

using Vec3 = VecN<3>;
using Mat3 = TensorN<3>;

/// (u ⊗ v) w = (v·w) u
template <int N>
TensorN<N> outer(const VecN<N>& u, const VecN<N>& v) {
    return u * v.transpose();
}

/// S : T = tr(Sᵀ T)
template <int N>
double frobenius(const TensorN<N>& s, const TensorN<N>& t) {
    return (s.array() * t.array()).sum();
}

template <int N>
VecN<N> apply(const TensorN<N>& s, const VecN<N>& u) {
    return s * u;
}

template <int N>
TensorN<N> compose(const TensorN<N>& s, const TensorN<N>& t) {
    return s * t;
}

template <int N>
TensorN<N> transpose(const TensorN<N>& s) {
    return s.transpose();
}

template <int N>
double trace(const TensorN<N>& s) {
    return s.trace();
}

template <int N>
TensorN<N> identity() {
    return TensorN<N>::Identity();
}

/// Orthogonal projector onto the plane normal to the unit vector n.
template <int N>
TensorN<N> tangential_projector(const VecN<N>& n) {
    return TensorN<N>::Identity() - n * n.transpose();
}

template <int N>
TensorN<N> sym(const TensorN<N>& s) {
    return 0.5 * (s + s.transpose());
}

}  // namespace shapecalc
