#pragma once

// Exact solution counting for power-sum systems.
//
// The central object is the mean value J_{s,k}(N): the number of 2s-tuples
// n in [1,N]^{2s} with  n_1^j + ... + n_s^j = n_{s+1}^j + ... + n_{2s}^j
// for every j = 1..k. It is computed by meet-in-the-middle: enumerate all
// N^s half-tuples, key each by its vector of power sums, and sum the
// squared multiplicities. Keys are exact integer tuples; a packed 64/128-bit
// representation is used when the bit widths allow, otherwise keys fall back
// to arbitrary-precision encodings. No truncated hashing anywhere.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vlab/errors.hpp"
#include "vlab/exact.hpp"

namespace vlab {

struct VinogradovInstance {
  int k = 1;          // number of simultaneous power-sum equations (degrees 1..k)
  int s = 1;          // variables per side
  std::uint64_t N = 1;  // range bound, entries in [1,N]
};

// Vector (p_1,...,p_k) with p_j = sum_i n_i^j. Exact component-wise equality.
struct PowerSumKey {
  std::vector<ExactCount> sums;

  friend bool operator==(const PowerSumKey& a, const PowerSumKey& b) {
    return a.sums == b.sums;
  }
};

PowerSumKey power_sum_key(std::span<const std::uint64_t> tuple, int k);

// Full enumeration over all N^{2s} tuples; the independent oracle.
// Requires N^{2s} <= 10^9.
ExactCount count_vinogradov_bruteforce(const VinogradovInstance& inst);

// J_{s,k}(N) by meet-in-the-middle. Requires the N^s key table to fit the
// memory budget; throws InstanceTooLarge otherwise.
ExactCount count_vinogradov(const VinogradovInstance& inst,
                            const MemoryBudget& budget = MemoryBudget::from_env());

// Count of n_1^k+...+n_m^k = n_{m+1}^k+...+n_{2m}^k with n_i in [1,N];
// equals the 2m-th moment of S(x) = sum_{n<=N} e(n^k x).
ExactCount count_hua_moment(int k, int m, std::uint64_t N,
                            const MemoryBudget& budget = MemoryBudget::from_env());

// Number of ordered s-tuples of positive integers with sum of k-th powers
// equal to n. Memoized recursion on (remaining sum, remaining terms).
ExactCount count_waring_representations(std::uint64_t n, int s, int k);

// Batch variant: representation counts for every target 0..n_max in one DP
// sweep. table[v] == count_waring_representations(v, s, k) for v >= 1.
std::vector<ExactCount> waring_representation_table(std::uint64_t n_max, int s,
                                                    int k);

// Near-solution counting for perturbed nodes t_1..t_N with
// (n-1)/N < t_n <= n/N: counts 2s-tuples of indices whose power-sum
// differences stay strictly below `threshold` for every degree j = 1..k.
struct NearSolutionCount {
  ExactCount count;
  // Tuples whose max-degree difference lies within guard_band of the
  // threshold; nonzero only possible for floating-point inputs.
  std::uint64_t boundary_cases = 0;
  double guard_band = 0.0;  // 2^-40 for floating inputs, 0 for exact rationals
  bool exact_inputs = true;
  bool used_grid_reduction = false;  // solved via the exact-grid identity
};

struct NearSolutionOptions {
  // When t is exactly the grid n/N and threshold <= N^-k, the count equals
  // count_vinogradov and is computed that way unless disabled here.
  bool allow_grid_reduction = true;
};

NearSolutionCount count_near_solutions(
    const std::vector<Rat>& t, int s, int k, const Rat& threshold,
    const NearSolutionOptions& opts = {},
    const MemoryBudget& budget = MemoryBudget::from_env());

// Floating-point convenience: inputs are converted to their exact dyadic
// values and comparisons carry a reported guard band of 2^-40.
NearSolutionCount count_near_solutions(
    const std::vector<double>& t, int s, int k, double threshold,
    const NearSolutionOptions& opts = {},
    const MemoryBudget& budget = MemoryBudget::from_env());

}  // namespace vlab
