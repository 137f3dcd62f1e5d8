#pragma once

// Parallel loops and reductions with results independent of the thread
// count: per-item terms are computed in parallel, then summed in fixed-size
// blocks whose partial sums are combined in index order. The *_serial
// variants are plain left-to-right loops kept as references for tests and
// benchmarks.

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

#include "shapecalc/analytic_surface.hpp"

namespace shapecalc {

inline constexpr long kReductionBlock = 256;

double blocked_sum(const std::vector<double>& terms);
double serial_sum(const std::vector<double>& terms);

/// Runs body(i) for i in [0, n) in parallel; the first exception thrown by
/// any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(long n, Body&& body) {
    std::exception_ptr failure;
    std::once_flag flag;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::call_once(flag, [&] { failure = std::current_exception(); });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

template <class F>
std::vector<double> parallel_terms(long n, F&& f) {
    std::vector<double> out(n);
    parallel_for(n, [&](long i) { out[i] = f(i); });
    return out;
}

/// Σ weight · f(node), thread-count independent.
template <class F>
double integrate_nodes(const std::vector<QuadratureNode>& nodes, F&& f) {
    return blocked_sum(parallel_terms(static_cast<long>(nodes.size()),
                                      [&](long i) { return nodes[i].weight * f(nodes[i]); }));
}

template <class F>
double integrate_nodes_serial(const std::vector<QuadratureNode>& nodes, F&& f) {
    double s = 0.0;
    for (const QuadratureNode& n : nodes) s += n.weight * f(n);
    return s;
}

}  // namespace shapecalc
