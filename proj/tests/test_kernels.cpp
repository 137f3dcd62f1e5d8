#include <gtest/gtest.h>

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "shapecalc/fem.hpp"
#include "shapecalc/functionals.hpp"
#include "shapecalc/kernels.hpp"
#include "shapecalc/random.hpp"

using namespace shapecalc;

namespace {

std::vector<double> noisy_terms(std::size_t n) {
    SplitMix rng(99);
    std::vector<double> t(n);
    for (double& x : t) x = rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-8, 8));
    return t;
}

class ThreadCount {
public:
    explicit ThreadCount(int n) : saved_(omp_get_max_threads()) { omp_set_num_threads(n); }
    ~ThreadCount() { omp_set_num_threads(saved_); }

private:
    int saved_;
};

}  // namespace

TEST(BlockedSum, Examples) {
    EXPECT_EQ(blocked_sum({}), 0.0);
    EXPECT_EQ(blocked_sum({1.5}), 1.5);
    std::vector<double> ones(1000, 1.0);
    EXPECT_EQ(blocked_sum(ones), 1000.0);
    EXPECT_EQ(serial_sum(ones), 1000.0);
}

TEST(BlockedSum, IndependentOfThreadCount) {
    const auto t = noisy_terms(100003);
    double first = 0;
    for (int threads : {1, 2, 3, 8}) {
        ThreadCount guard(threads);
        const double s = blocked_sum(t);
        if (threads == 1) first = s;
        EXPECT_EQ(s, first) << threads;
    }
    EXPECT_NEAR(first, serial_sum(t), 1e-6 * std::abs(serial_sum(t)) + 1e-3);
}

TEST(IntegrateNodes, IndependentOfThreadCount) {
    const auto s = make_torus(2.0, 1.0);
    auto f = [](const QuadratureNode& n) { return std::sin(n.point[0]) * n.shape_operator.trace(); };
    double first = 0;
    for (int threads : {1, 2, 8}) {
        ThreadCount guard(threads);
        const double v = integrate_nodes(s.quadrature(), f);
        if (threads == 1) first = v;
        EXPECT_EQ(v, first);
    }
    EXPECT_NEAR(first, integrate_nodes_serial(s.quadrature(), f), 1e-12);
}

TEST(ParallelFor, RethrowsFirstException) {
    std::vector<int> hit(64, 0);
    EXPECT_THROW(parallel_for(64,
                              [&](long i) {
                                  hit[i] = 1;
                                  if (i == 17) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
    EXPECT_EQ(hit[17], 1);
    EXPECT_NO_THROW(parallel_for(0, [](long) { throw std::runtime_error("never"); }));
}

TEST(Assembly, IndependentOfThreadCount) {
    const TriMesh m = jitter_radially(make_icosphere(3), 0.01, 3);
    Vector first;
    double first_j = 0;
    for (int threads : {1, 2, 8}) {
        ThreadCount guard(threads);
        const SurfaceFemSpace fem = build_fem_space(m);
        const long n = static_cast<long>(fem.dof());
        const Vector x = fem.stiffness * Vector::Ones(n) + fem.mass * Vector::LinSpaced(n, 0, 1);
        const double j = evaluate(make_functional(BuiltinFunctional::willmore), m);
        if (threads == 1) {
            first = x;
            first_j = j;
        }
        EXPECT_EQ(x, first);
        EXPECT_EQ(j, first_j);
    }
}
