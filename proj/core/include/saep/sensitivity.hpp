#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "saep/conformal.hpp"
#include "saep/types.hpp"

namespace saep {

// Uniform pollster-bias envelope per (leaning, candidate), in proportion
// units: observed poll minus realized share ranged over the group.
struct BiasBounds {
  Leaning leaning = Leaning::Blue;
  Candidate candidate = Candidate::Dem;
  double a = 0.0;  // lower bound, a <= b
  double b = 0.0;
};

struct SensitivityConfig {
  int T = 200;
  std::uint64_t seed = 1;
  double q_lo = 0.05;
  double q_hi = 0.95;
};

struct SensitivityTarget {
  std::string state;
  Leaning leaning = Leaning::Blue;
  double d_hat_star = 0.0;
  int outcome_sign = 1;
  double base_poip = 0.0;
};

struct SensitivityResult {
  std::string state;
  double base_poip = 0.0;
  double median_poip = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// a = min, b = max of {poll proportion - realized share} per (leaning,
// candidate) over the calibration year. An empty group is an error.
std::vector<BiasBounds> estimate_bias_bounds(const std::vector<PollObservation>& calib_polls,
                                             const std::vector<ElectionOutcome>& calib_outcomes,
                                             const std::map<std::string, Leaning>& leanings);

// Each proportion is replaced by clamp(p - U, 1e-4, 1-1e-4) with
// U ~ Unif(a, b) drawn independently per poll row; deterministic in (seed, t).
// `clamp_count`, when non-null, accumulates boundary hits.
std::vector<PollObservation> synthesize_polls(const std::vector<PollObservation>& polls,
                                              const std::vector<BiasBounds>& bounds,
                                              const std::map<std::string, Leaning>& leanings,
                                              std::uint64_t seed, int t,
                                              int* clamp_count = nullptr);

// Rebuilds calibration scores from (possibly perturbed) polls while keeping
// the per-state predictions d_hat_i fixed at their base values.
CalibrationBuild rebuild_scores(const std::vector<PollObservation>& calib_polls,
                                const std::map<std::string, double>& d_hat_calib,
                                const std::map<std::string, Leaning>& leanings);

// For t = 1..T: synthesize calibration polls, rebuild scores, recompute the
// conformal PoIP per target; reports the median and the configured quantile
// interval. Deterministic given the seed; failed replicates are dropped and
// more than 10% dropped is an error.
std::vector<SensitivityResult> run_sensitivity(const SensitivityConfig& config,
                                               const std::vector<PollObservation>& calib_polls,
                                               const std::map<std::string, double>& d_hat_calib,
                                               const std::map<std::string, Leaning>& leanings,
                                               const std::vector<BiasBounds>& bounds,
                                               const std::vector<SensitivityTarget>& targets);

}  // namespace saep
