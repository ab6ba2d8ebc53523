#include "saep/bootstrap_uq.hpp"

#include <cmath>

#include "saep/data_core.hpp"
#include "saep/error.hpp"
#include "saep/parallel.hpp"
#include "saep/rng.hpp"
#include "saep/stats.hpp"

namespace saep {

BootstrapRun bootstrap_dhat_samples(const ModelFit& fit, const DesignMatrices& training_design,
                                    const std::vector<PollObservation>& polls_2024,
                                    const BootstrapConfig& config) {
  if (config.B < 2) throw Error("bootstrap: B must be >= 2");
  if (fit.variant != ModelVariant::ModelI) {
    throw Error("bootstrap: defined for Model I fits only");
  }
  if (!fit.converged) throw Error("bootstrap: base fit did not converge");
  for (const auto& p : polls_2024) {
    if (!p.sample_size) {
      throw Error("bootstrap: 2024 poll without sample_size (" + p.state + ", " + p.pollster +
                  ")");
    }
  }
  auto by_state = group_polls_by_state(polls_2024);
  std::vector<std::string> states;
  for (const auto& [s, g] : by_state) {
    if (g.dem.empty() || g.rep.empty()) {
      throw Error("bootstrap: state " + s + " lacks 2024 polls for one candidate");
    }
    if (fit.v_hat.find(s) == fit.v_hat.end()) {
      throw Error("bootstrap: state " + s + " not present in the training fit");
    }
    states.push_back(s);
  }

  // theta_hat per training row, the mean of the resampled responses
  std::vector<double> theta_row(training_design.n());
  for (std::size_t r = 0; r < training_design.n(); ++r) {
    const int k = training_design.candidate[r];
    const auto& v = fit.v_hat.at(training_design.state_codes[training_design.state[r]]);
    theta_row[r] = fit.beta0 + (k ? fit.beta1 : 0.0) + v[k];
  }
  const std::vector<double> warm = fit.vc.to_unconstrained();

  const std::size_t n_states = states.size();
  std::vector<std::vector<double>> dhat(config.B, std::vector<double>());
  std::vector<char> kept(config.B, 0);

  parallel_for(config.B, [&](int b) {
    Rng rng(config.seed, static_cast<std::uint64_t>(b));

    DesignMatrices db = training_design;
    for (std::size_t r = 0; r < db.n(); ++r) {
      db.y[r] = theta_row[r] + fit.vc.tau * rng.normal();
    }
    OptimizerOptions opts = fit.options;
    opts.restarts = 1;
    opts.initial_point = warm;
    ModelFit refit = fit_reml(ModelSpec{ModelVariant::ModelI}, db, opts);
    if (!refit.converged) return;

    std::vector<double> row(n_states);
    std::size_t idx = 0;
    for (const auto& s : states) {
      const auto& g = by_state.at(s);
      double mlp[2] = {0.0, 0.0};
      for (int k = 0; k < 2; ++k) {
        const auto& polls = k ? g.rep : g.dem;
        double sum = 0.0;
        for (const auto& p : polls) {
          const std::int64_t n = *p.sample_size;
          std::int64_t count = rng.binomial(n, p.proportion());
          // keep the log finite at the extremes
          if (count < 1) count = 1;
          if (count > n - 1) count = n - 1;
          sum += std::log(static_cast<double>(count) / static_cast<double>(n));
        }
        mlp[k] = sum / static_cast<double>(polls.size());
      }
      const double theta_dem = eblup_theta(refit, s, Candidate::Dem);
      const double theta_rep = eblup_theta(refit, s, Candidate::Rep);
      row[idx++] = (mlp[0] - theta_dem) - (mlp[1] - theta_rep);
    }
    dhat[b] = std::move(row);
    kept[b] = 1;
  });

  BootstrapRun run;
  run.B = config.B;
  for (int b = 0; b < config.B; ++b) {
    if (!kept[b]) {
      ++run.dropped;
      continue;
    }
    std::size_t idx = 0;
    for (const auto& s : states) run.samples[s].push_back(dhat[b][idx++]);
  }
  if (run.dropped * 10 > config.B) {
    throw Error("bootstrap: " + std::to_string(run.dropped) + " of " +
                std::to_string(config.B) + " replicates failed to converge");
  }
  return run;
}

double bootstrap_poip(double d_hat_star, double se_boot) {
  if (se_boot < 0.0) throw Error("bootstrap_poip: negative se");
  if (se_boot == 0.0) {
    if (d_hat_star == 0.0) throw Error("bootstrap_poip: undefined at d = 0 with zero se");
    return 0.0;
  }
  return stats::normal_cdf(-std::fabs(d_hat_star) / se_boot);
}

double bootstrap_poip_piecewise(double d_hat_star, double se_boot, int outcome_sign) {
  if (!(se_boot > 0.0)) throw Error("bootstrap_poip_piecewise: se must be > 0");
  if (outcome_sign == 0) throw Error("bootstrap_poip_piecewise: outcome sign must be +/-1");
  const double z = d_hat_star / se_boot;
  return outcome_sign < 0 ? 1.0 - stats::normal_cdf(z) : stats::normal_cdf(z);
}

}  // namespace saep
