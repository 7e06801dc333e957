#pragma once

#include <cstddef>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bifold::par {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline constexpr std::size_t kSumBlock = 4096;

// Sum over a fixed block partition: the grouping of partial sums does not
// depend on the thread count, so results are bitwise reproducible.
inline double block_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kSumBlock - 1) / kSumBlock;
    std::vector<double> partial(nblocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nblocks); ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
        const std::size_t hi = lo + kSumBlock < n ? lo + kSumBlock : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// Recursive pairwise sum. Deterministic, and exact for short inputs of
// identical values with power-of-two length.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() == 0) return 0.0;
    if (xs.size() == 1) return xs[0];
    if (xs.size() == 2) return xs[0] + xs[1];
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace bifold::par
