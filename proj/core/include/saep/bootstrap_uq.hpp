#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "saep/lmm.hpp"
#include "saep/types.hpp"

namespace saep {

struct BootstrapConfig {
  int B = 1000;
  std::uint64_t seed = 1;
};

struct BootstrapResult {
  std::string state;
  double d_hat_star = 0.0;
  std::vector<double> samples;  // d_hat_star^b over kept replicates
  double se_boot = 0.0;
  double poip = 0.0;
};

struct BootstrapRun {
  std::map<std::string, std::vector<double>> samples;  // state -> d_hat^b list
  int dropped = 0;
  int B = 0;
};

// Parametric bootstrap of the predicted margin under Model I:
// per replicate, training responses are resampled as y^b = theta_hat + e^b
// with e^b ~ N(0, tau_hat^2), Model I is refit on y^b, 2024 poll proportions
// are resampled as Binomial(n, p)/n, and d_hat^b follows from the
// transfer-learning prediction. Deterministic given the seed; replicates
// whose refit fails to converge are dropped, >10% dropped is an error.
BootstrapRun bootstrap_dhat_samples(const ModelFit& fit, const DesignMatrices& training_design,
                                    const std::vector<PollObservation>& polls_2024,
                                    const BootstrapConfig& config);

// Phi(-|d| / se): the normal-approximation PoIP bound, direction-corrected so
// stronger leads give smaller values. se = 0 returns 0 for d != 0 and is an
// error at d = 0.
double bootstrap_poip(double d_hat_star, double se_boot);

// The piecewise form as printed in the source derivation, kept behind this
// separate entry point for comparison: 1 - Phi(d/se) when the realized margin
// is negative, Phi(d/se) when positive.
double bootstrap_poip_piecewise(double d_hat_star, double se_boot, int outcome_sign);

}  // namespace saep
