#include <gtest/gtest.h>

#include "shapecalc/tensor.hpp"
#include "support.hpp"

using namespace shapecalc;
using shapecalc::test_support::random_mat;
using shapecalc::test_support::random_vec;

TEST(Tensor, OuterAppliesAsDyad) {
    const Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY();
    EXPECT_EQ(apply<3>(outer<3>(e1, e2), e2), e1);
    SplitMix rng(3);
    const Vec3 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
    EXPECT_NEAR((outer<3>(u, v) * w - v.dot(w) * u).norm(), 0.0, 1e-15);
    EXPECT_NEAR(trace<3>(outer<3>(u, v)), u.dot(v), 1e-15);
    EXPECT_EQ(outer<3>(Vec3::Zero(), v), Mat3::Zero());
}

TEST(Tensor, FrobeniusExamples) {
    SplitMix rng(5);
    const Mat3 s = random_mat(rng);
    EXPECT_NEAR(frobenius<3>(identity<3>(), s), trace<3>(s), 1e-15);
    const Vec3 a = random_vec(rng), b = random_vec(rng), u = random_vec(rng), v = random_vec(rng);
    EXPECT_NEAR(frobenius<3>(outer<3>(a, b), outer<3>(u, v)), a.dot(u) * b.dot(v), 1e-14);
    EXPECT_GE(frobenius<3>(s, s), 0.0);
    EXPECT_NEAR(frobenius<3>(s, s), s.squaredNorm(), 1e-14);
}

class TensorIdentities : public ::testing::TestWithParam<int> {};

TEST_P(TensorIdentities, HoldForRandomInputs) {
    SplitMix rng(static_cast<std::uint64_t>(GetParam()));
    const Mat3 S = random_mat(rng), T = random_mat(rng), P = random_mat(rng);
    const Vec3 u = random_vec(rng), v = random_vec(rng), a = random_vec(rng), b = random_vec(rng);
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}); };
    auto relm = [](const Mat3& x, const Mat3& y) { return (x - y).norm() / std::max({1.0, x.norm(), y.norm()}); };

    EXPECT_LE(rel(frobenius<3>(S * T, P), frobenius<3>(S, P * T.transpose())), 1e-13);
    EXPECT_LE(rel(frobenius<3>(S, outer<3>(u, v)), u.dot(S * v)), 1e-13);
    EXPECT_LE(relm(outer<3>(u, v) * S, outer<3>(u, Vec3(S.transpose() * v))), 1e-13);
    EXPECT_LE(relm(S * outer<3>(u, v), outer<3>(Vec3(S * u), v)), 1e-13);
    EXPECT_LE(relm(outer<3>(a, b) * outer<3>(u, v), b.dot(u) * outer<3>(a, v)), 1e-13);
    EXPECT_LE(rel(frobenius<3>(outer<3>(a, b), outer<3>(u, v)), a.dot(u) * b.dot(v)), 1e-13);
    EXPECT_LE(rel(frobenius<3>(S, T), frobenius<3>(T, S)), 1e-13);

    const Mat3 sym_s = sym<3>(S);
    EXPECT_LE(rel(frobenius<3>(sym_s, T), frobenius<3>(sym_s, Mat3(T.transpose()))), 1e-13);
}

INSTANTIATE_TEST_SUITE_P(Seeds, TensorIdentities, ::testing::Range(1, 21));

TEST(Tensor, TransposeIsInvolution) {
    SplitMix rng(11);
    const Mat3 s = random_mat(rng);
    EXPECT_EQ(transpose<3>(transpose<3>(s)), s);
    EXPECT_DOUBLE_EQ(trace<3>(s), s(0, 0) + s(1, 1) + s(2, 2));
}

TEST(Tensor, PlaneDimension) {
    const VecN<2> n(0.6, 0.8);
    const TensorN<2> p = tangential_projector<2>(n);
    EXPECT_NEAR((p * p - p).norm(), 0.0, 1e-15);
    EXPECT_NEAR((p * n).norm(), 0.0, 1e-15);
    EXPECT_NEAR(trace<2>(p), 1.0, 1e-15);
    EXPECT_NEAR(frobenius<2>(identity<2>(), p), 1.0, 1e-15);
}
