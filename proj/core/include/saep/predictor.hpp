#pragma once

#include <map>
#include <string>
#include <vector>

#include "saep/types.hpp"

namespace saep {

enum class PredictionMethod : int { SaeI = 0, SaeIII = 1, PoP = 2, Proxy2020 = 3 };

const char* method_label(PredictionMethod m);

struct StatePrediction {
  std::string state;
  PredictionMethod method = PredictionMethod::SaeI;
  double pi_hat_dem = 0.0;  // unnormalized predicted share, > 0
  double pi_hat_rep = 0.0;
  double d_hat = 0.0;  // log(pi_dem) - log(pi_rep)
  Candidate winner = Candidate::Dem;
};

struct NationalTally {
  int ec_dem = 0;
  int ec_rep = 0;
  std::map<std::string, Candidate> per_state_winners;
  std::vector<std::string> proxy_states;  // states decided by their 2020 outcome
};

// (1/n) sum log p over the polls of one (state, candidate).
double mean_log_polls(const std::vector<double>& proportions);

// pi_hat_k = exp(mean log polls_k - theta_hat_k); the winner comes from the
// sign of d_hat and an exact tie is rejected.
StatePrediction sae_predict_state(const std::string& state, PredictionMethod method,
                                  double theta_hat_dem, double theta_hat_rep,
                                  const std::vector<double>& dem_polls,
                                  const std::vector<double>& rep_polls);

// Poll-of-polls baseline: per-candidate arithmetic mean of poll proportions.
StatePrediction pop_predict_state(const std::string& state,
                                  const std::vector<double>& dem_polls,
                                  const std::vector<double>& rep_polls);

// log(dem_share) - log(rep_share).
double dor_margin(double dem_share, double rep_share);

// Winner-take-all tally. States absent from `predictions` must be covered by
// proxy_outcomes_2020; those are decided by their 2020 winner and listed in
// proxy_states.
NationalTally ec_tally(const std::vector<StatePrediction>& predictions,
                       const std::vector<StateMeta>& meta,
                       const std::vector<ElectionOutcome>& proxy_outcomes_2020);

}  // namespace saep
