#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saep/design.hpp"

namespace saep {

enum class ModelVariant : int { ModelI = 1, ModelIII = 3 };

struct ModelSpec {
  ModelVariant variant = ModelVariant::ModelI;
};

// Variance components of the bias model. The per-state random effect is
// bivariate (Dem, Rep) with covariance
//   G = [ sigma_d^2           rho sigma_d sigma_r ]
//       [ rho sigma_d sigma_r sigma_r^2           ]
// and sigma_u is the pollster effect scale, present only for Model III.
struct VarianceComponents {
  double sigma_d = 0.0;
  double sigma_r = 0.0;
  double rho = 0.0;
  double tau = 1.0;
  std::optional<double> sigma_u;

  void validate() const;

  // Unconstrained parameterization (log sigma_d, log sigma_r, atanh rho,
  // log tau [, log sigma_u]). Coordinates are clamped to [-12, 6] (atanh rho
  // to [-12, 12]) so boundary fits show up as values at the box edge.
  static VarianceComponents from_unconstrained(const std::vector<double>& x, ModelVariant v);
  std::vector<double> to_unconstrained() const;
};

struct OptimizerOptions {
  int restarts = 3;
  int max_evaluations = 2000;  // per restart
  double ftol = 1e-9;
  double xtol = 1e-6;
  std::uint64_t seed = 1;
  double initial_step = 0.3;
  // Unconstrained start overriding the method-of-moments default (used to
  // warm-start bootstrap refits).
  std::optional<std::vector<double>> initial_point;
};

struct RestartTrace {
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct OptimizerTrace {
  std::vector<RestartTrace> restarts;
  int best_restart = -1;
};

struct ModelFit {
  ModelVariant variant = ModelVariant::ModelI;
  double beta0 = 0.0;
  double beta1 = 0.0;
  VarianceComponents vc;
  std::map<std::string, std::array<double, 2>> v_hat;  // state -> (dem, rep)
  std::map<std::string, double> u_hat;                 // pollster -> u (Model III)
  double reml_loglik = 0.0;  // -objective/2, additive constants dropped
  bool converged = false;
  int n_obs = 0;
  OptimizerOptions options;
  OptimizerTrace trace;
  std::string dataset_fingerprint;  // set by callers that know the inputs
};

// -2 x restricted log-likelihood, log|V| + log|X'V^-1 X| + r'V^-1 r with
// r the GLS residual. Model I (no sigma_u) is evaluated block-by-state via a
// 2x2 Woodbury capacitance; Model III goes through the scaled mixed-model
// normal equations. V is never formed densely.
double reml_objective(const VarianceComponents& vc, const DesignMatrices& design);

ModelFit fit_reml(const ModelSpec& spec, const DesignMatrices& design,
                  const OptimizerOptions& options = {});

struct Blups {
  std::map<std::string, std::array<double, 2>> v_hat;
  std::map<std::string, double> u_hat;
};

// BLUPs of the random effects at fixed (beta, vc); solves the mixed-model
// equations in the scale-stable form w = W (tau^2 I + W'Z'Z W)^-1 W' Z'r.
Blups compute_blups(double beta0, double beta1, const VarianceComponents& vc,
                    const DesignMatrices& design);

// EBLUP of the small-area mean theta_{ik}. For Model III the supplied 2024
// pollster list is averaged over (with multiplicity); pollsters unseen in
// training contribute u = 0.
double eblup_theta(const ModelFit& fit, const std::string& state, Candidate candidate,
                   const std::vector<std::string>* pollsters_2024 = nullptr);

struct ParamBootstrapEntry {
  std::string name;
  std::string group;  // Fixed / State / Pollster / Residual
  double estimate = 0.0;
  double se = 0.0;
  double t = 0.0;
};

struct ParamBootstrap {
  std::vector<ParamBootstrapEntry> entries;
  int B = 0;
  int dropped = 0;
};

// Parametric bootstrap of the parameter estimates: y^b ~ N(X beta, V(vc)),
// refit per replicate (warm-started), se = sample sd across replicates.
// Deterministic given seed; replicates that fail to converge are dropped,
// more than 10% dropped is an error.
ParamBootstrap bootstrap_param_se(const ModelFit& fit, const DesignMatrices& design, int B,
                                  std::uint64_t seed);

// JSON document with all ModelFit fields, options, and fingerprint.
std::string model_fit_json(const ModelFit& fit);

}  // namespace saep
