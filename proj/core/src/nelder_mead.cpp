#include "saep/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace saep {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded(const std::function<double(const std::vector<double>&)>& f,
               const std::vector<double>& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : kInf;
}
}  // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, double initial_step,
                          int max_evaluations, double ftol, double xtol) {
  const std::size_t d = x0.size();
  const std::size_t m = d + 1;

  std::vector<std::vector<double>> xs(m, x0);
  std::vector<double> fs(m);
  int evals = 0;

  for (std::size_t i = 1; i < m; ++i) xs[i][i - 1] += initial_step;
  for (std::size_t i = 0; i < m; ++i) {
    fs[i] = guarded(f, xs[i]);
    ++evals;
  }

  std::vector<std::size_t> order(m);
  auto sort_simplex = [&] {
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
  };

  auto centroid_excluding = [&](std::size_t worst) {
    std::vector<double> c(d, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < d; ++k) c[k] += xs[i][k];
    }
    for (std::size_t k = 0; k < d; ++k) c[k] /= static_cast<double>(d);
    return c;
  };

  SimplexResult result;
  while (true) {
    sort_simplex();
    const std::size_t best = order[0];
    const std::size_t worst = order[m - 1];
    const std::size_t second_worst = order[m - 2];

    double fspread = 0.0;
    double xspread = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (std::isfinite(fs[i]) && std::isfinite(fs[best])) {
        fspread = std::max(fspread, std::fabs(fs[i] - fs[best]));
      } else if (i != best) {
        fspread = kInf;
      }
      for (std::size_t k = 0; k < d; ++k) {
        xspread = std::max(xspread, std::fabs(xs[i][k] - xs[best][k]));
      }
    }
    if (fspread < ftol && xspread < xtol) {
      result.converged = true;
      break;
    }
    if (evals >= max_evaluations) break;

    const auto c = centroid_excluding(worst);
    auto blend = [&](double t) {
      std::vector<double> p(d);
      for (std::size_t k = 0; k < d; ++k) p[k] = c[k] + t * (xs[worst][k] - c[k]);
      return p;
    };

    // reflection
    auto xr = blend(-1.0);
    const double fr = guarded(f, xr);
    ++evals;
    if (fr < fs[order[0]]) {
      // expansion
      auto xe = blend(-2.0);
      const double fe = guarded(f, xe);
      ++evals;
      if (fe < fr) {
        xs[worst] = std::move(xe);
        fs[worst] = fe;
      } else {
        xs[worst] = std::move(xr);
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second_worst]) {
      xs[worst] = std::move(xr);
      fs[worst] = fr;
      continue;
    }
    // contraction (outside if the reflection improved on the worst vertex)
    const bool outside = fr < fs[worst];
    auto xc = blend(outside ? -0.5 : 0.5);
    const double fc = guarded(f, xc);
    ++evals;
    if (fc < std::min(fr, fs[worst])) {
      xs[worst] = std::move(xc);
      fs[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 0; i < m; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k) {
        xs[i][k] = xs[best][k] + 0.5 * (xs[i][k] - xs[best][k]);
      }
      fs[i] = guarded(f, xs[i]);
      ++evals;
      if (evals >= max_evaluations) break;
    }
  }

  sort_simplex();
  result.x = xs[order[0]];
  result.value = fs[order[0]];
  result.evaluations = evals;
  return result;
}

}  // namespace saep
