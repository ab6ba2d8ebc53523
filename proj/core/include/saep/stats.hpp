#pragma once

#include <vector>

namespace saep::stats {

// Standard normal CDF.
double normal_cdf(double z);

double mean(const std::vector<double>& xs);

// sqrt((1/n) * sum (x - mean)^2); the convention used for all bootstrap
// standard errors in this project.
double sample_sd(const std::vector<double>& xs);

// Linear-interpolation quantile on order statistics (R type 7). p in [0,1].
double quantile(std::vector<double> xs, double p);

double median(std::vector<double> xs);

}  // namespace saep::stats
