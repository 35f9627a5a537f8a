#pragma once

// Exponent calculators for the mean value J_{s,k}(N) and empirical growth
// fitting of computed count series.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vlab/exact.hpp"

namespace vlab {

// Exponent of the dominant term in the sharp mean-value bound:
// max(s, 2s - k(k+1)/2).
double conjectured_exponent(int s, int k);

// Classical bound exponent 2s - k(k+1)/2 + eta with
// eta = (k^2/2)(1 - 1/k)^floor(s/k), for s >= k. The multiplicative factor
// D(s,k) = min(k^(c*s*k), k^(c*k^3)) carries an unspecified constant c and
// is reported symbolically, never evaluated.
struct ClassicalBound {
  double exponent;
  double eta;
  std::string d_factor;  // symbolic, c unspecified
};
ClassicalBound classical_exponent_bound(int s, int k);

// Smallest s (as a real threshold) guaranteeing the asymptotic formula under
// the classical method: k^2 (2 log k + log log k + 5), natural logs, k >= 2.
double asymptotic_threshold(int k);

// (N, count) series for empirical growth exponents.
struct GrowthSeries {
  std::vector<std::pair<std::uint64_t, ExactCount>> points;
};

struct GrowthFit {
  double slope;
  double intercept;
  double rms_residual;
};

// Unweighted least squares of log(count) against log(N). Requires at least
// three points, strictly increasing N, all counts positive.
GrowthFit fit_growth_exponent(const GrowthSeries& series);

}  // namespace vlab
