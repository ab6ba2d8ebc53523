#include "saep/predictor.hpp"

#include <cmath>
#include <set>

#include "saep/data_core.hpp"
#include "saep/error.hpp"

namespace saep {

const char* method_label(PredictionMethod m) {
  switch (m) {
    case PredictionMethod::SaeI: return "SAE-M1";
    case PredictionMethod::SaeIII: return "SAE-M3";
    case PredictionMethod::PoP: return "PoP";
    default: return "Proxy2020";
  }
}

namespace {

StatePrediction finish(const std::string& state, PredictionMethod method, double pi_dem,
                       double pi_rep) {
  if (!(pi_dem > 0.0) || !(pi_rep > 0.0)) {
    throw Error("prediction for " + state + ": shares must be positive");
  }
  StatePrediction p;
  p.state = state;
  p.method = method;
  p.pi_hat_dem = pi_dem;
  p.pi_hat_rep = pi_rep;
  p.d_hat = std::log(pi_dem) - std::log(pi_rep);
  if (p.d_hat == 0.0) {
    throw Error("prediction for " + state + ": exact tie (d_hat = 0) is rejected");
  }
  p.winner = p.d_hat > 0.0 ? Candidate::Dem : Candidate::Rep;
  return p;
}

}  // namespace

double mean_log_polls(const std::vector<double>& proportions) {
  if (proportions.empty()) throw Error("mean_log_polls: no polls for this state/candidate");
  double s = 0.0;
  for (double p : proportions) {
    if (!(p > 0.0 && p < 1.0)) throw Error("mean_log_polls: proportion outside (0,1)");
    s += std::log(p);
  }
  return s / static_cast<double>(proportions.size());
}

StatePrediction sae_predict_state(const std::string& state, PredictionMethod method,
                                  double theta_hat_dem, double theta_hat_rep,
                                  const std::vector<double>& dem_polls,
                                  const std::vector<double>& rep_polls) {
  const double pi_dem = std::exp(mean_log_polls(dem_polls) - theta_hat_dem);
  const double pi_rep = std::exp(mean_log_polls(rep_polls) - theta_hat_rep);
  return finish(state, method, pi_dem, pi_rep);
}

StatePrediction pop_predict_state(const std::string& state,
                                  const std::vector<double>& dem_polls,
                                  const std::vector<double>& rep_polls) {
  if (dem_polls.empty() || rep_polls.empty()) {
    throw Error("pop_predict_state: " + state + " lacks polls for one candidate");
  }
  auto avg = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double p : v) s += p;
    return s / static_cast<double>(v.size());
  };
  return finish(state, PredictionMethod::PoP, avg(dem_polls), avg(rep_polls));
}

double dor_margin(double dem_share, double rep_share) {
  if (!(dem_share > 0.0) || !(rep_share > 0.0)) {
    throw Error("dor_margin: shares must be strictly positive");
  }
  return std::log(dem_share) - std::log(rep_share);
}

NationalTally ec_tally(const std::vector<StatePrediction>& predictions,
                       const std::vector<StateMeta>& meta,
                       const std::vector<ElectionOutcome>& proxy_outcomes_2020) {
  std::map<std::string, Candidate> predicted;
  for (const auto& p : predictions) {
    if (predicted.count(p.state)) throw Error("ec_tally: duplicate prediction for " + p.state);
    predicted[p.state] = p.winner;
  }
  auto proxies = outcomes_by_state(proxy_outcomes_2020);

  NationalTally tally;
  for (const auto& m : meta) {
    Candidate winner;
    auto ip = predicted.find(m.state);
    if (ip != predicted.end()) {
      winner = ip->second;
    } else {
      auto io = proxies.find(m.state);
      if (io == proxies.end()) {
        throw Error("ec_tally: state " + m.state +
                    " has neither a prediction nor a 2020 proxy outcome");
      }
      const double d = dor_margin(io->second.dem_share(), io->second.rep_share());
      if (d == 0.0) throw Error("ec_tally: proxy outcome tie for " + m.state);
      winner = d > 0.0 ? Candidate::Dem : Candidate::Rep;
      tally.proxy_states.push_back(m.state);
    }
    tally.per_state_winners[m.state] = winner;
    (winner == Candidate::Dem ? tally.ec_dem : tally.ec_rep) += m.ec_votes;
  }
  return tally;
}

}  // namespace saep
