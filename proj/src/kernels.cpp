#include "shapecalc/kernels.hpp"

namespace shapecalc {

double blocked_sum(const std::vector<double>& terms) {
    const long n = static_cast<long>(terms.size());
    const long blocks = (n + kReductionBlock - 1) / kReductionBlock;
    std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
    for (long b = 0; b < blocks; ++b) {
        double s = 0.0;
        const long end = std::min(n, (b + 1) * kReductionBlock);
        for (long i = b * kReductionBlock; i < end; ++i) s += terms[i];
        partial[b] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

double serial_sum(const std::vector<double>& terms) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

}  // namespace shapecalc
