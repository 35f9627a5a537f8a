#pragma once

// Deterministic reductions and a static-partition parallel loop.
// Grid sums use a fixed pairwise tree so results are bit-for-bit
// reproducible regardless of thread schedule.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>

namespace vlab {

double pairwise_sum(std::span<const double> xs);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

// Runs fn(begin, end) on contiguous blocks of [0, n) across worker threads.
// Blocks are a pure function of n and the thread count; callers must write
// only to disjoint slots so the fill is schedule-independent.
void parallel_blocks(std::int64_t n,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace vlab
