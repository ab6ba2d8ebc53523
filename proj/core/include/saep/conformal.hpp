#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "saep/lmm.hpp"
#include "saep/types.hpp"

namespace saep {

struct ConformalConfig {
  int train_year = 2020;
  int calib_year = 2016;
};

struct ScoreEntry {
  std::string state;
  std::string pollster;
  double value = 0.0;  // d_ij - d_hat_i
};

struct CalibrationScores {
  Leaning leaning = Leaning::Blue;
  std::vector<ScoreEntry> scores;
  std::size_t n() const { return scores.size(); }
};

struct ConformalResult {
  std::string state;
  double d_hat_star = 0.0;
  double p_at_dhat = 0.0;
  double poip = 0.0;
};

struct CalibrationBuild {
  std::map<Leaning, CalibrationScores> by_leaning;
  std::map<std::string, double> d_hat_calib;  // SAE prediction per calibration state
  std::vector<std::string> skipped_states;    // calibration states without usable polls
  int unpaired_rows = 0;  // poll rows with no same-pollster opposite-candidate partner
};

// Builds leaning-localized calibration score sets from the calibration year:
// d_hat_i is the transfer-learning prediction for calibration state i using
// the train-year fit and the calibration-year polls; each pollster j with
// both candidates polled contributes R_ij = d_ij - d_hat_i to the score set
// of state i's leaning.
CalibrationBuild build_calibration_scores(const ModelFit& train_fit,
                                          const std::vector<PollObservation>& calib_polls,
                                          const std::vector<ElectionOutcome>& calib_outcomes,
                                          const std::map<std::string, Leaning>& leanings);

// p(d) = (#{R_s(d) < R_ij} + 1) / (n + 1) with R_s(d) = d - d_hat_star.
// Right-continuous, nonincreasing in d, with range [1/(n+1), 1].
double conformal_p_value(double d, double d_hat_star, const CalibrationScores& scores);

// PoIP at the predicted margin (so the target score is 0): the add-one
// smoothed fraction of positive calibration scores when the outcome sign is
// positive, of non-positive scores when negative. Margins outside [-1,1] are
// clamped; `clamped` reports that when non-null.
double conformal_poip(double d_hat_star, const CalibrationScores& scores, int outcome_sign,
                      bool* clamped = nullptr);

// --- Monte-Carlo check of the conformal validity bound ---

struct CoverageGeneratorSpec {
  int n_calib = 30;
  double target_shift = 0.0;  // 0 keeps calibration and target exchangeable
  double sigma = 1.0;
};

struct CoverageRate {
  double alpha = 0.0;
  double rate = 0.0;
  double mc_se = 0.0;
};

// Simulates P[p(target) <= alpha] with Gaussian margins; with target_shift = 0
// the empirical rate must stay below alpha up to Monte-Carlo error. A nonzero
// shift breaks exchangeability and is reported as-is (diagnostic).
std::vector<CoverageRate> coverage_simulation(const CoverageGeneratorSpec& gen,
                                              const std::vector<double>& alphas,
                                              int replications, std::uint64_t seed);

}  // namespace saep
