#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "shapecalc/errors.hpp"
#include "shapecalc/flow.hpp"
#include "shapecalc/invariants.hpp"
#include "support.hpp"

using namespace shapecalc;
using std::numbers::pi;

TEST(Trajectory, Examples) {
    const Vec3 x0 = Vec3(1, 2, 2) / 3.0;
    EXPECT_EQ(integrate_trajectory(VelocityField::zero(), x0, 0.7, 16), x0);
    EXPECT_LE((integrate_trajectory(VelocityField::dilation(), x0, 0.5, 64) - std::exp(0.5) * x0).norm(), 1e-10);
    const Vec3 end = integrate_trajectory(VelocityField::translation(Vec3::UnitZ()), x0, 0.3, 16);
    EXPECT_NEAR((end - (x0 + 0.3 * Vec3::UnitZ())).norm(), 0.0, 1e-15);
}

TEST(Trajectory, FourthOrder) {
    const auto v = VelocityField::rotation(Vec3(0, 0, 1));
    const Vec3 x0(1, 0, 0.5);
    auto err = [&](int steps) {
        return (integrate_trajectory(v, x0, 1.0, steps) - Vec3(std::cos(1.0), std::sin(1.0), 0.5)).norm();
    };
    EXPECT_NEAR(err(4) / err(8), 16.0, 1.5);
    EXPECT_THROW(integrate_trajectory(v, x0, 1.0, 0), InvalidArgument);
}

TEST(Trajectory, DefaultSteps) {
    EXPECT_EQ(default_steps(0.001), 16);
    EXPECT_EQ(default_steps(0.5), 50);
    EXPECT_EQ(default_steps(-0.5), 50);
}

TEST(FlowMesh, Examples) {
    const TriMesh m = make_icosphere(3);
    const FlowedMesh same = flow_mesh(m, VelocityField::zero(), 0.1, default_steps(0.1));
    EXPECT_EQ(same.mesh.vertices(), m.vertices());
    EXPECT_EQ(same.inverted, 0u);

    const FlowedMesh d = flow_mesh(m, VelocityField::dilation(), 0.1, default_steps(0.1));
    ASSERT_EQ(d.mesh.triangles(), m.triangles());
    double worst = 0;
    for (std::size_t i = 0; i < m.num_vertices(); ++i)
        worst = std::max(worst, (d.mesh.vertices()[i] - std::exp(0.1) * m.vertices()[i]).norm());
    EXPECT_LE(worst, 1e-9);

    const FlowedMesh r = flow_mesh(m, VelocityField::radial(), 0.1, default_steps(0.1));
    worst = 0;
    for (const Vec3& x : r.mesh.vertices()) worst = std::max(worst, std::abs(x.norm() - 1.1));
    EXPECT_LE(worst, 1e-6);
}

TEST(FlowMesh, ParallelMatchesSerial) {
    const TriMesh m = jitter_radially(make_icosphere(3), 0.01, 2);
    const auto v = VelocityField::random_polynomial(3, 4);
    const FlowedMesh a = flow_mesh(m, v, 0.05, 16), b = flow_mesh_serial(m, v, 0.05, 16);
    EXPECT_EQ(a.mesh.vertices(), b.mesh.vertices());
    EXPECT_EQ(a.inverted, b.inverted);
}

TEST(FlowMesh, InversionDetected) {
    // A strong twist about z shears coarse triangles past each other.
    const TriMesh m = make_icosphere(1);
    const Polynomial x = Polynomial::coordinate(0), y = Polynomial::coordinate(1), z = Polynomial::coordinate(2);
    const VelocityField v(AmbientVectorField::polynomial({-10.0 * (z * y), 10.0 * (z * x), Polynomial::constant(0.0)}),
                          "twist");
    EXPECT_GT(flow_mesh(m, v, 1.0, 200).inverted, 0u);
    EXPECT_EQ(flow_mesh(m, v, 0.01, 16).inverted, 0u);
}

TEST(FdFunctional, Examples) {
    const auto s = make_sphere(1.0);
    FdOptions opt;
    opt.h = 1e-3;
    EXPECT_NEAR(fd_functional_derivative(make_functional(BuiltinFunctional::area), s, VelocityField::radial(), opt),
                8 * pi, 1e-6);
    const auto v = VelocityField::random_polynomial(2, 3);
    EXPECT_NEAR(fd_functional_derivative(make_functional(BuiltinFunctional::willmore), s, v, opt), 0.0, 1e-6);
    const auto t = make_torus(2.0, 1.0);
    const auto vt = VelocityField::random_polynomial(2, 8, 0.0, t.scale());
    EXPECT_NEAR(fd_functional_derivative(make_functional(BuiltinFunctional::total_gauss), t, vt, opt), 0.0, 1e-5);
    opt.h = 0;
    EXPECT_THROW(fd_functional_derivative(make_functional(BuiltinFunctional::area), s, v, opt), InvalidArgument);
}

TEST(FdFunctional, ExactFamilyMatchesClosedForm) {
    const auto s = make_sphere(1.5);
    const auto area = make_functional(BuiltinFunctional::area);
    ASSERT_TRUE(exact_family(s, VelocityField::dilation()).has_value());
    // A(t) = 4π R² e^{2t}
    EXPECT_NEAR(fd_functional_derivative(area, s, VelocityField::dilation()), 8 * pi * 2.25, 1e-9);
    EXPECT_NEAR(fd_functional_derivative(area, s, VelocityField::normal_inflation(s)), 8 * pi * 1.5, 1e-9);
    EXPECT_FALSE(exact_family(s, VelocityField::random_polynomial(1, 1)).has_value());
}

TEST(FdFunctional, ChartTransportAgreesWithExactFamily) {
    const auto t = make_torus(2.0, 1.0);
    const auto v = VelocityField::normal_inflation(t);
    const auto area = make_functional(BuiltinFunctional::area);
    EXPECT_NEAR(flowed_functional(area, t, v, 0.05, false), flowed_functional(area, t, v, 0.05, true), 1e-8);
}

TEST(FdFunctional, SecondOrderInH) {
    const auto s = make_ellipsoid(1.0, 1.3, 0.7);
    const auto v = VelocityField::random_polynomial(2, 12);
    const auto area = make_functional(BuiltinFunctional::area);
    const double exact = first_shape_derivative(area, s, NormalSpeed::from_velocity(s, v.field()));
    FdOptions opt;
    opt.richardson = false;
    opt.h = 0.01;
    const double e1 = std::abs(fd_functional_derivative(area, s, v, opt) - exact);
    opt.h = 0.005;
    const double e2 = std::abs(fd_functional_derivative(area, s, v, opt) - exact);
    EXPECT_GE(e1 / e2, 3.0);
    EXPECT_LE(e1 / e2, 5.0);
}

TEST(FdFunctional, TangentialVelocityNullity) {
    for (const auto& base : test_support::builtin_surfaces()) {
        const auto s = base.with_order(48);
        const auto w = VelocityField::random_polynomial(2, 21, 0.0, s.scale(), s.shape().center);
        const auto v = VelocityField::tangential_part(s, w.field());
        for (BuiltinFunctional k : {BuiltinFunctional::area, BuiltinFunctional::willmore, BuiltinFunctional::spontaneous,
                                    BuiltinFunctional::total_gauss})
            EXPECT_NEAR(fd_functional_derivative(make_functional(k, 1.0), s, v), 0.0, 1e-6) << s.name();
    }
}

TEST(FdPointwise, Examples) {
    const auto s = make_sphere(1.0);
    const ChartPoint X = s.quadrature()[40].where;
    PointQuantitySpec q;
    EXPECT_NEAR(fd_pointwise_derivative(q, s, X, VelocityField::radial())[0], -2.0, 1e-6);
    q.kind = PointQuantity::kappa_g;
    EXPECT_NEAR(fd_pointwise_derivative(q, s, X, VelocityField::radial())[0], -2.0, 1e-6);

    const auto t = make_torus(2.0, 1.0);
    const auto at = t.locate(Vec3(3, 0, 0));
    ASSERT_TRUE(at.has_value());
    EXPECT_NEAR(fd_pointwise_derivative(q, t, *at, VelocityField::translation(Vec3::UnitZ()))[0], 0.0, 1e-5);
}

TEST(FdPointwise, Errors) {
    const auto s = make_sphere(1.0);
    PointQuantitySpec q;
    q.kind = PointQuantity::restriction;
    EXPECT_THROW(fd_pointwise_derivative(q, s, s.quadrature()[0].where, VelocityField::radial()), InvalidArgument);
    q.kind = PointQuantity::trace_power;
    q.p = 0;
    EXPECT_THROW(fd_pointwise_derivative(q, s, s.quadrature()[0].where, VelocityField::radial()), InvalidArgument);
}

TEST(ChartJetTransport, MatchesFrameOfDilatedChart) {
    const auto s = make_ellipsoid(1.0, 1.3, 0.7);
    const auto& node = s.quadrature()[100];
    const ChartJet c0 = s.atlas()[0].eval(node.where.u, node.where.w);
    const ChartJet c = transport_chart_jet(VelocityField::dilation(), c0, 0.2, 32);
    const FrameGeometry g0 = frame_geometry(c0), g = frame_geometry(c);
    EXPECT_LE((g.normal - g0.normal).norm(), 1e-10);
    EXPECT_LE((g.shape - g0.shape / std::exp(0.2)).norm(), 1e-9);
    EXPECT_NEAR(g.area_element, g0.area_element * std::exp(0.4), 1e-9);
    EXPECT_LE((g0.shape - node.shape_operator).norm(), 1e-10);
}
