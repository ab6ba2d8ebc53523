#include "saep/stats.hpp"

#include <algorithm>
#include <cmath>

#include "saep/error.hpp"

namespace saep::stats {

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / 1.4142135623730950488016887);
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) throw Error("mean of empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  const double m = mean(xs);
  double s2 = 0.0;
  for (double x : xs) s2 += (x - m) * (x - m);
  return std::sqrt(s2 / static_cast<double>(xs.size()));
}

double quantile(std::vector<double> xs, double p) {
  if (xs.empty()) throw Error("quantile of empty sample");
  if (p < 0.0 || p > 1.0) throw Error("quantile level outside [0,1]");
  std::sort(xs.begin(), xs.end());
  const double h = p * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return xs[lo] + (h - std::floor(h)) * (xs[hi] - xs[lo]);
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

}  // namespace saep::stats
