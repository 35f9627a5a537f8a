#include "vlab/exponents.hpp"

#include <cmath>

#include "vlab/errors.hpp"

namespace vlab {

double conjectured_exponent(int s, int k) {
  if (s < 1 || k < 1) throw PreconditionError("conjectured_exponent: s, k >= 1 required");
  const double sd = s;
  const double crit = 0.5 * static_cast<double>(k) * (k + 1);
  return std::max(sd, 2.0 * sd - crit);
}

ClassicalBound classical_exponent_bound(int s, int k) {
  if (k < 1) throw PreconditionError("classical_exponent_bound: k >= 1 required");
  if (s < k) throw PreconditionError("classical_exponent_bound: s >= k required");
  const double eta =
      0.5 * static_cast<double>(k) * k *
      std::pow(1.0 - 1.0 / static_cast<double>(k), static_cast<double>(s / k));
  ClassicalBound b;
  b.eta = eta;
  b.exponent = 2.0 * s - 0.5 * static_cast<double>(k) * (k + 1) + eta;
  b.d_factor = "min(" + std::to_string(k) + "^(c*" + std::to_string(s) + "*" +
               std::to_string(k) + "), " + std::to_string(k) + "^(c*" +
               std::to_string(k) + "^3)) with c unspecified";
  return b;
}

double asymptotic_threshold(int k) {
  if (k < 2) throw PreconditionError("asymptotic_threshold: k >= 2 required (log log k)");
  const double lk = std::log(static_cast<double>(k));
  return static_cast<double>(k) * k * (2.0 * lk + std::log(lk) + 5.0);
}

GrowthFit fit_growth_exponent(const GrowthSeries& series) {
  const auto& pts = series.points;
  if (pts.size() < 3) throw InsufficientPoints("fit_growth_exponent: need >= 3 points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && pts[i].first <= pts[i - 1].first)
      throw PreconditionError("fit_growth_exponent: N must be strictly increasing");
    if (pts[i].second.is_zero())
      throw PreconditionError("fit_growth_exponent: counts must be positive");
  }
  const std::size_t n = pts.size();
  double sx = 0, sy = 0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(static_cast<double>(pts[i].first));
    ys[i] = pts[i].second.log_natural();
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.rms_residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace vlab
