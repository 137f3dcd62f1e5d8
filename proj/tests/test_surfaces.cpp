#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/errors.hpp"
#include "support.hpp"

using namespace shapecalc;
using std::numbers::pi;

TEST(Normal, Examples) {
    const auto s = make_sphere(1.0);
    EXPECT_NEAR((s.normal_at(Vec3(0, 0, 1)) - Vec3(0, 0, 1)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((s.normal_at(Vec3(1, 0, 0)) - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
    const auto t = make_torus(2.0, 1.0);
    EXPECT_NEAR((t.normal_at(Vec3(3, 0, 0)) - Vec3(1, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(Normal, Errors) {
    const auto s = make_sphere(1.0);
    EXPECT_THROW(s.normal_at(Vec3::Zero()), DegenerateGradient);
    EXPECT_THROW(s.normal_at(Vec3(0, 0, 1.001)), NotOnSurface);
    EXPECT_NO_THROW(s.normal_at(Vec3(0, 0, 1 + 1e-12)));
}

TEST(ShapeOperator, Examples) {
    const auto s = make_sphere(1.0);
    SplitMix rng(21);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        const Vec3 x = test_support::random_vec(rng).normalized();
        worst = std::max(worst, (s.shape_operator_at(x) - (Mat3::Identity() - x * x.transpose())).norm());
    }
    EXPECT_LE(worst, 1e-12);

    const auto s2 = make_sphere(2.0);
    const Mat3 p = tangential_projector<3>(Vec3::UnitX());
    EXPECT_NEAR((s2.shape_operator_at(Vec3(2, 0, 0)) - p / 2).norm(), 0.0, 1e-15);

    const auto t = make_torus(2.0, 1.0);
    Eigen::SelfAdjointEigenSolver<Mat3> eig(t.shape_operator_at(Vec3(3, 0, 0)));
    EXPECT_NEAR(eig.eigenvalues()[0], 0.0, 1e-15);
    EXPECT_NEAR(eig.eigenvalues()[1], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(eig.eigenvalues()[2], 1.0, 1e-15);
}

double weight_sum(const AnalyticSurface& s) {
    double sum = 0;
    for (const auto& n : s.quadrature()) sum += n.weight;
    return sum;
}

TEST(Quadrature, Areas) {
    EXPECT_NEAR(weight_sum(make_sphere(1.0)), 4 * pi, 1e-10);
    EXPECT_NEAR(weight_sum(make_torus(2.0, 1.0)), 8 * pi * pi, 1e-10);
    EXPECT_NEAR(weight_sum(make_sphere(2.0, Vec3(1, -2, 0.5), 40)), 16 * pi, 1e-10);
}

TEST(Quadrature, EmptyAtlas) {
    const auto s = make_sphere(1.0);
    const AnalyticSurface empty("empty", s.level_set(), {}, 1.0, 1.0);
    EXPECT_TRUE(empty.quadrature().empty());
}

TEST(Quadrature, NodeInvariants) {
    for (const auto& s : test_support::builtin_surfaces()) {
        for (const auto& n : s.quadrature()) {
            ASSERT_NEAR(n.normal.norm(), 1.0, 1e-12);
            ASSERT_LE((n.shape_operator * n.normal).norm(), 1e-10);
            ASSERT_LE((n.shape_operator - n.shape_operator.transpose()).norm(), 1e-10);
            ASSERT_LE(s.distance_estimate(n.point), 1e-12 * s.scale());
            const ChartJet c = s.atlas()[n.where.chart].eval(n.where.u, n.where.w);
            ASSERT_GT(c.xu.cross(c.xw).dot(n.normal), 0.0) << s.name();
            ASSERT_LE((c.x - n.point).norm(), 1e-14 * s.scale());
        }
    }
}

TEST(Quadrature, OrderIsConfigurable) {
    const auto s = make_sphere(1.0, Vec3::Zero(), 8);
    EXPECT_EQ(s.quadrature_order(), 8);
    const auto s16 = s.with_order(16);
    EXPECT_EQ(s16.quadrature().size(), 4 * s.quadrature().size());
}

TEST(Project, Examples) {
    const auto s = make_sphere(1.0);
    EXPECT_NEAR((s.project(Vec3(0, 0, 2)) - Vec3(0, 0, 1)).norm(), 0.0, 1e-12);
    const Vec3 on = Vec3(1, 2, 2) / 3.0;
    EXPECT_NEAR((s.project(on) - on).norm(), 0.0, 1e-15);
    const auto t = make_torus(2.0, 1.0);
    EXPECT_NEAR((t.project(Vec3(3.5, 0, 0)) - Vec3(3, 0, 0)).norm(), 0.0, 1e-12);
}

TEST(Project, IdempotentAndAccurate) {
    SplitMix rng(4);
    for (const auto& s : test_support::builtin_surfaces()) {
        for (const auto& n : test_support::sample_nodes(s, 30, 9)) {
            const Vec3 x0 = n.point + rng.uniform(-0.2, 0.2) * s.tube_radius() * n.normal;
            const Vec3 p = s.project(x0);
            EXPECT_LE(s.distance_estimate(p), 1e-12 * s.scale());
            EXPECT_LE((s.project(p) - p).norm(), 1e-12);
        }
    }
}

TEST(Project, Errors) {
    const auto s = make_sphere(1.0);
    EXPECT_THROW(s.project(Vec3(0, 0, 2.5)), InvalidArgument);
    EXPECT_THROW(s.project(Vec3(10, 0, 0)), InvalidArgument);
}

TEST(Locate, RoundTrip) {
    for (const auto& s : test_support::builtin_surfaces()) {
        for (const auto& n : test_support::sample_nodes(s, 20, 2)) {
            const auto c = s.locate(n.point);
            ASSERT_TRUE(c.has_value()) << s.name();
            EXPECT_LE((s.chart_point(*c) - n.point).norm(), 1e-12);
        }
    }
    EXPECT_FALSE(make_sphere(1.0).locate(Vec3(0, 0, 3)).has_value());
}

TEST(Flipped, ReversesOrientation) {
    const auto s = make_ellipsoid(1.0, 1.3, 0.7);
    const auto f = s.flipped();
    const Vec3 x(1, 0, 0);
    EXPECT_NEAR((f.normal_at(x) + s.normal_at(x)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((f.shape_operator_at(x) + s.shape_operator_at(x)).norm(), 0.0, 1e-14);
    for (const auto& n : f.quadrature()) {
        const ChartJet c = f.atlas()[n.where.chart].eval(n.where.u, n.where.w);
        ASSERT_GT(c.xu.cross(c.xw).dot(n.normal), 0.0);
    }
    EXPECT_TRUE(f.shape().inward);
}

TEST(Builtins, RejectBadParameters) {
    EXPECT_THROW(make_sphere(0.0), InvalidArgument);
    EXPECT_THROW(make_ellipsoid(1, -1, 1), InvalidArgument);
    EXPECT_THROW(make_torus(1, 2), InvalidArgument);
}

TEST(Builtins, RebuildFromParameters) {
    const auto t = make_torus(2.0, 0.5, Vec3(0.1, 0.2, 0.3));
    const auto r = make_builtin(t.shape());
    const Vec3 x = t.quadrature()[17].point;
    EXPECT_NEAR((r.normal_at(x) - t.normal_at(x)).norm(), 0.0, 1e-15);
}
