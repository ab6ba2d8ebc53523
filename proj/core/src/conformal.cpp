#include "saep/conformal.hpp"

#include <algorithm>
#include <cmath>

#include "saep/data_core.hpp"
#include "saep/error.hpp"
#include "saep/predictor.hpp"
#include "saep/rng.hpp"
#include "saep/sensitivity.hpp"

namespace saep {

namespace {

// Pairs a state's poll rows by pollster (duplicates pair in order of
// appearance) and appends one score per pair to the state's leaning group.
void append_state_scores(const std::string& state, const StatePolls& polls, double d_hat,
                         Leaning leaning, CalibrationBuild& out) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_pollster;
  for (const auto& p : polls.dem) by_pollster[p.pollster].first.push_back(p.proportion());
  for (const auto& p : polls.rep) by_pollster[p.pollster].second.push_back(p.proportion());

  auto& group = out.by_leaning[leaning];
  group.leaning = leaning;
  for (const auto& [pollster, pair] : by_pollster) {
    const std::size_t paired = std::min(pair.first.size(), pair.second.size());
    out.unpaired_rows += static_cast<int>(pair.first.size() + pair.second.size() - 2 * paired);
    for (std::size_t m = 0; m < paired; ++m) {
      const double d_ij = std::log(pair.first[m]) - std::log(pair.second[m]);
      group.scores.push_back({state, pollster, d_ij - d_hat});
    }
  }
}

}  // namespace

CalibrationBuild build_calibration_scores(const ModelFit& train_fit,
                                          const std::vector<PollObservation>& calib_polls,
                                          const std::vector<ElectionOutcome>& calib_outcomes,
                                          const std::map<std::string, Leaning>& leanings) {
  auto by_state = group_polls_by_state(calib_polls);
  auto outcomes = outcomes_by_state(calib_outcomes);

  CalibrationBuild out;
  for (const auto& [state, polls] : by_state) {
    auto il = leanings.find(state);
    if (il == leanings.end()) {
      throw Error("conformal: no leaning for calibration state " + state);
    }
    if (outcomes.find(state) == outcomes.end()) {
      throw Error("conformal: calibration state " + state + " has no outcome record");
    }
    if (polls.dem.empty() || polls.rep.empty()) {
      out.skipped_states.push_back(state);
      continue;
    }

    std::vector<double> dem, rep;
    for (const auto& p : polls.dem) dem.push_back(p.proportion());
    for (const auto& p : polls.rep) rep.push_back(p.proportion());
    const double theta_dem = eblup_theta(train_fit, state, Candidate::Dem);
    const double theta_rep = eblup_theta(train_fit, state, Candidate::Rep);
    const StatePrediction pred =
        sae_predict_state(state, PredictionMethod::SaeI, theta_dem, theta_rep, dem, rep);
    out.d_hat_calib[state] = pred.d_hat;
    append_state_scores(state, polls, pred.d_hat, il->second, out);
  }
  return out;
}

CalibrationBuild rebuild_scores(const std::vector<PollObservation>& calib_polls,
                                const std::map<std::string, double>& d_hat_calib,
                                const std::map<std::string, Leaning>& leanings) {
  auto by_state = group_polls_by_state(calib_polls);
  CalibrationBuild out;
  for (const auto& [state, polls] : by_state) {
    auto id = d_hat_calib.find(state);
    if (id == d_hat_calib.end()) {
      out.skipped_states.push_back(state);
      continue;
    }
    auto il = leanings.find(state);
    if (il == leanings.end()) {
      throw Error("conformal: no leaning for calibration state " + state);
    }
    if (polls.dem.empty() || polls.rep.empty()) {
      out.skipped_states.push_back(state);
      continue;
    }
    out.d_hat_calib[state] = id->second;
    append_state_scores(state, polls, id->second, il->second, out);
  }
  return out;
}

double conformal_p_value(double d, double d_hat_star, const CalibrationScores& scores) {
  if (scores.scores.empty()) throw Error("conformal_p_value: empty calibration score set");
  const double rs = d - d_hat_star;
  std::size_t count = 0;
  for (const auto& s : scores.scores) {
    if (rs < s.value) ++count;
  }
  return static_cast<double>(count + 1) / static_cast<double>(scores.n() + 1);
}

double conformal_poip(double d_hat_star, const CalibrationScores& scores, int outcome_sign,
                      bool* clamped) {
  if (scores.scores.empty()) throw Error("conformal_poip: empty calibration score set");
  if (outcome_sign == 0) throw Error("conformal_poip: outcome sign must be +/-1");
  bool was_clamped = false;
  if (d_hat_star < -1.0 || d_hat_star > 1.0) was_clamped = true;
  if (clamped) *clamped = was_clamped;
  // evaluated at the prediction itself the target score is exactly 0
  std::size_t positive = 0;
  for (const auto& s : scores.scores) {
    if (s.value > 0.0) ++positive;
  }
  const double n1 = static_cast<double>(scores.n() + 1);
  if (outcome_sign > 0) {
    return static_cast<double>(positive + 1) / n1;
  }
  return static_cast<double>(scores.n() - positive + 1) / n1;
}

std::vector<CoverageRate> coverage_simulation(const CoverageGeneratorSpec& gen,
                                              const std::vector<double>& alphas,
                                              int replications, std::uint64_t seed) {
  if (replications < 1) throw Error("coverage_simulation: need at least one replication");
  if (gen.n_calib < 0 || !(gen.sigma > 0.0)) {
    throw Error("coverage_simulation: invalid generator spec");
  }
  std::vector<std::int64_t> hits(alphas.size(), 0);
  for (int r = 0; r < replications; ++r) {
    Rng rng(seed, static_cast<std::uint64_t>(r));
    std::vector<double> calib(gen.n_calib);
    for (int i = 0; i < gen.n_calib; ++i) calib[i] = rng.normal(0.0, gen.sigma);
    const double target = rng.normal(gen.target_shift, gen.sigma);
    std::size_t above = 0;
    for (double c : calib) {
      if (target < c) ++above;
    }
    const double p = static_cast<double>(above + 1) / static_cast<double>(gen.n_calib + 1);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      if (p <= alphas[a]) ++hits[a];
    }
  }
  std::vector<CoverageRate> out;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    CoverageRate cr;
    cr.alpha = alphas[a];
    cr.rate = static_cast<double>(hits[a]) / static_cast<double>(replications);
    cr.mc_se = std::sqrt(cr.rate * (1.0 - cr.rate) / static_cast<double>(replications));
    out.push_back(cr);
  }
  return out;
}

}  // namespace saep
