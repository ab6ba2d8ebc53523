#pragma once

#include <functional>
#include <vector>

namespace saep {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;  // objective spread < ftol and vertex spread < xtol
};

// Nelder-Mead downhill simplex. Deterministic: the result depends only on the
// objective, x0, and the settings. Non-finite objective values are treated
// as +infinity.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, double initial_step,
                          int max_evaluations, double ftol, double xtol);

}  // namespace saep
