// OpenMP kernels against their serial references.
//
//   ./bench_kernels --benchmark_filter=Flow
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "shapecalc/analytic_surface.hpp"
#include "shapecalc/fem.hpp"
#include "shapecalc/flow.hpp"
#include "shapecalc/kernels.hpp"
#include "shapecalc/mesh.hpp"
#include "shapecalc/newton.hpp"
#include "shapecalc/velocity.hpp"

using namespace shapecalc;

namespace {

std::vector<double> terms(long n) {
    std::vector<double> t(n);
    for (long i = 0; i < n; ++i) t[i] = std::sin(0.001 * static_cast<double>(i));
    return t;
}

void BM_BlockedSum(benchmark::State& state) {
    const auto t = terms(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(blocked_sum(t));
}

void BM_SerialSum(benchmark::State& state) {
    const auto t = terms(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(serial_sum(t));
}

double curvature_energy(const QuadratureNode& q) {
    const double k = q.shape_operator.trace();
    return 0.5 * k * k;
}

void BM_IntegrateNodes(benchmark::State& state) {
    const auto s = make_sphere(1.0, Vec3::Zero(), static_cast<int>(state.range(0)));
    const auto& nodes = s.quadrature();
    for (auto _ : state) benchmark::DoNotOptimize(integrate_nodes(nodes, curvature_energy));
}

void BM_IntegrateNodesSerial(benchmark::State& state) {
    const auto s = make_sphere(1.0, Vec3::Zero(), static_cast<int>(state.range(0)));
    const auto& nodes = s.quadrature();
    for (auto _ : state) benchmark::DoNotOptimize(integrate_nodes_serial(nodes, curvature_energy));
}

void fem_space(benchmark::State& state, bool parallel) {
    const TriMesh mesh = make_icosphere(static_cast<int>(state.range(0)));
    FemOptions opt;
    opt.parallel = parallel;
    for (auto _ : state) benchmark::DoNotOptimize(build_fem_space(mesh, opt));
}

void BM_FemSpace(benchmark::State& state) { fem_space(state, true); }
void BM_FemSpaceSerial(benchmark::State& state) { fem_space(state, false); }

void willmore_form(benchmark::State& state, bool parallel) {
    const SurfaceFemSpace fem = build_fem_space(jitter_radially(make_icosphere(static_cast<int>(state.range(0))), 0.01, 1));
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble_second_form(BuiltinFunctional::willmore, fem, nullptr, parallel));
}

void BM_WillmoreForm(benchmark::State& state) { willmore_form(state, true); }
void BM_WillmoreFormSerial(benchmark::State& state) { willmore_form(state, false); }

void BM_FlowMesh(benchmark::State& state) {
    const TriMesh mesh = make_icosphere(static_cast<int>(state.range(0)));
    const auto v = VelocityField::random_polynomial(3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(flow_mesh(mesh, v, 0.1, 20));
}

void BM_FlowMeshSerial(benchmark::State& state) {
    const TriMesh mesh = make_icosphere(static_cast<int>(state.range(0)));
    const auto v = VelocityField::random_polynomial(3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(flow_mesh_serial(mesh, v, 0.1, 20));
}

}  // namespace

BENCHMARK(BM_BlockedSum)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SerialSum)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_IntegrateNodes)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IntegrateNodesSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FemSpace)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FemSpaceSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WillmoreForm)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WillmoreFormSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowMesh)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowMeshSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
