#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace saep {

// Deterministic RNG streams. Replicated work (bootstrap replicates,
// sensitivity draws, simulation reps) derives one stream per unit of work as
// (seed, stream_id), so results do not depend on scheduling order.
//
// Distribution sampling is implemented here rather than with <random>
// distributions because the standard does not pin their algorithms; these
// definitions make output files reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed_mix(seed, 0)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(seed_mix(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Box-Muller; one value per call, the sibling draw is discarded to keep the
  // stream position independent of call parity.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  std::int64_t below(std::int64_t n) {  // uniform integer in [0, n)
    return static_cast<std::int64_t>(uniform() * static_cast<double>(n));
  }

  // Binomial(n, p): pmf inversion for small n*p, else the BTRS transformed
  // rejection sampler (Hoermann 1993). Exact distribution either way.
  std::int64_t binomial(std::int64_t n, double p);

 private:
  static std::uint64_t seed_mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over the pair; decorrelates nearby (seed, stream) values.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

inline std::int64_t Rng::binomial(std::int64_t n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  const double np = static_cast<double>(n) * q;
  std::int64_t k;
  if (np < 10.0) {
    // CDF inversion from 0.
    const double s = q / (1.0 - q);
    const double a = static_cast<double>(n + 1) * s;
    double r = std::pow(1.0 - q, static_cast<double>(n));
    double u = uniform();
    k = 0;
    while (u > r) {
      u -= r;
      ++k;
      r *= a / static_cast<double>(k) - s;
      if (k > n) { k = n; break; }
    }
  } else {
    const double nd = static_cast<double>(n);
    const double spq = std::sqrt(np * (1.0 - q));
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * q;
    const double c = np + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double lpq = std::log(q / (1.0 - q));
    const std::int64_t m = static_cast<std::int64_t>((nd + 1.0) * q);
    const double h = lgamma(m + 1.0) + lgamma(nd - m + 1.0);
    for (;;) {
      double u = uniform() - 0.5;
      double v = uniform();
      const double us = 0.5 - std::fabs(u);
      const double kd = std::floor((2.0 * a / us + b) * u + c);
      if (kd < 0.0 || kd > nd) continue;
      if (us >= 0.07 && v <= v_r) {
        k = static_cast<std::int64_t>(kd);
        break;
      }
      v = std::log(v * alpha / (a / (us * us) + b));
      if (v <= h - lgamma(kd + 1.0) - lgamma(nd - kd + 1.0) +
                   (kd - m) * lpq) {
        k = static_cast<std::int64_t>(kd);
        break;
      }
    }
  }
  return flip ? n - k : k;
}

}  // namespace saep
