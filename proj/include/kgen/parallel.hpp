#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kgen::par {

// Fixed-size blocking keeps floating-point reduction order independent of the
// number of OpenMP threads: per-block partials are computed in parallel, then
// accumulated serially in block order. Any run, serial or parallel, produces
// bit-identical results.

inline constexpr std::size_t kBlockSize = 4096;

template <class F>
double block_sum(std::size_t n, F&& f) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlockSize - 1) / kBlockSize;
    if (nblocks == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += f(i);
        return s;
    }
    std::vector<double> partial(nblocks);
    const auto bcount = static_cast<std::int64_t>(nblocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < bcount; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
        const std::size_t hi = std::min(lo + kBlockSize, n);
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

template <class F>
double block_max(std::size_t n, F&& f) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    if (n == 0) return neg_inf;
    const std::size_t nblocks = (n + kBlockSize - 1) / kBlockSize;
    if (nblocks == 1) {
        double m = neg_inf;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, f(i));
        return m;
    }
    std::vector<double> partial(nblocks);
    const auto bcount = static_cast<std::int64_t>(nblocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < bcount; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
        const std::size_t hi = std::min(lo + kBlockSize, n);
        double m = neg_inf;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, f(i));
        partial[static_cast<std::size_t>(b)] = m;
    }
    double total = neg_inf;
    for (double m : partial) total = std::max(total, m);
    return total;
}

/// Parallel loop over [0, n); f(i) must only touch state owned by index i.
template <class F>
void for_each_index(std::size_t n, F&& f) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
}

}  // namespace kgen::par
