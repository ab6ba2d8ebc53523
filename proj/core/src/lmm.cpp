#include "saep/lmm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "saep/error.hpp"
#include "saep/nelder_mead.hpp"
#include "saep/parallel.hpp"
#include "saep/rng.hpp"
#include "saep/stats.hpp"

namespace saep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogLo = -12.0;
constexpr double kLogHi = 6.0;
constexpr double kAtanhBox = 12.0;

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Lower Cholesky factor of G; valid for sigma_d or sigma_r equal to zero.
Eigen::Matrix2d chol_g(const VarianceComponents& vc) {
  Eigen::Matrix2d L;
  L << vc.sigma_d, 0.0,
       vc.rho * vc.sigma_r, vc.sigma_r * std::sqrt(std::max(0.0, 1.0 - vc.rho * vc.rho));
  return L;
}

struct StateStats {
  double n[2] = {0.0, 0.0};  // observation counts per candidate
  double t[2] = {0.0, 0.0};  // y sums per candidate
};

// Precomputed sufficient statistics; each objective evaluation is O(S) for
// Model I and O(q^3) in the small normal-equation dimension q for Model III.
class RemlProblem {
 public:
  RemlProblem(const DesignMatrices& d, bool model3) : d_(d), model3_(model3) {
    S_ = d.n_states();
    P_ = model3 ? d.n_pollsters() : 0;
    q_ = 2 * S_ + P_;
    st_.resize(S_);
    m_all_.assign(P_, 0.0);
    m_rep_.assign(P_, 0.0);
    t_poll_.assign(P_, 0.0);
    std::map<std::tuple<int, int, int>, double> cross;
    for (std::size_t r = 0; r < d.n(); ++r) {
      const int i = d.state[r];
      const int k = d.candidate[r];
      const double y = d.y[r];
      st_[i].n[k] += 1.0;
      st_[i].t[k] += y;
      yty_ += y * y;
      xty_[0] += y;
      xty_[1] += k ? y : 0.0;
      n_total_ += 1.0;
      n_rep_ += k ? 1.0 : 0.0;
      if (model3_) {
        const int j = d.pollster[r];
        m_all_[j] += 1.0;
        m_rep_[j] += k ? 1.0 : 0.0;
        t_poll_[j] += y;
        cross[{i, k, j}] += 1.0;
      }
    }
    for (const auto& [key, count] : cross) {
      cross_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
    }
  }

  bool model3() const { return model3_; }
  int n_states() const { return S_; }
  const StateStats& state_stats(int i) const { return st_[i]; }

  struct Assembled {
    Eigen::Matrix2d A;       // X'V^-1 X
    Eigen::Vector2d b;       // X'V^-1 y
    double c = 0.0;          // y'V^-1 y
    double logdet_v = 0.0;
    bool ok = false;
  };

  Assembled assemble(const VarianceComponents& vc) const {
    return model3_ ? assemble3(vc) : assemble1(vc);
  }

  double objective(const VarianceComponents& vc) const {
    const auto e = assemble(vc);
    if (!e.ok) return kInf;
    const double det_a = e.A(0, 0) * e.A(1, 1) - e.A(0, 1) * e.A(1, 0);
    if (!(det_a > 0.0) || !std::isfinite(det_a)) return kInf;
    const Eigen::Vector2d beta = solve2(e.A, e.b, det_a);
    const double quad = e.c - beta.dot(e.b);
    const double value = e.logdet_v + std::log(det_a) + quad;
    return std::isfinite(value) ? value : kInf;
  }

  Eigen::Vector2d gls_beta(const VarianceComponents& vc) const {
    const auto e = assemble(vc);
    const double det_a = e.ok ? e.A(0, 0) * e.A(1, 1) - e.A(0, 1) * e.A(1, 0) : 0.0;
    if (!e.ok || !(det_a > 1e-300) || !std::isfinite(det_a)) {
      throw Error("fit_reml: singular X'V^-1 X (a candidate has no usable observations?)");
    }
    return solve2(e.A, e.b, det_a);
  }

  // w = W (tau^2 I + W'Z'Z W)^-1 W'Z'r; stable for vanishing variance
  // components on either side.
  Blups blups(double beta0, double beta1, const VarianceComponents& vc) const {
    vc.validate();
    const double tau2 = vc.tau * vc.tau;
    const Eigen::Matrix2d L = chol_g(vc);
    Blups out;
    if (!model3_) {
      for (int i = 0; i < S_; ++i) {
        const auto& s = st_[i];
        Eigen::Vector2d sr(s.t[0] - s.n[0] * beta0, s.t[1] - s.n[1] * (beta0 + beta1));
        Eigen::Matrix2d C = tau2 * Eigen::Matrix2d::Identity();
        C += L.transpose() * Eigen::Vector2d(s.n[0], s.n[1]).asDiagonal() * L;
        const Eigen::Vector2d v = L * C.llt().solve(L.transpose() * sr);
        out.v_hat[d_.state_codes[i]] = {v(0), v(1)};
      }
      return out;
    }
    const double su = vc.sigma_u.value_or(0.0);
    Eigen::MatrixXd C = buildC(vc, L, su);
    Eigen::LLT<Eigen::MatrixXd> llt(C);
    if (llt.info() != Eigen::Success) {
      throw Error("compute_blups: normal-equations system not positive definite");
    }
    Eigen::VectorXd h(q_);
    for (int i = 0; i < S_; ++i) {
      const auto& s = st_[i];
      Eigen::Vector2d sr(s.t[0] - s.n[0] * beta0, s.t[1] - s.n[1] * (beta0 + beta1));
      h.segment<2>(2 * i) = L.transpose() * sr;
    }
    for (int j = 0; j < P_; ++j) {
      h(2 * S_ + j) = su * (t_poll_[j] - m_all_[j] * beta0 - m_rep_[j] * beta1);
    }
    const Eigen::VectorXd z = llt.solve(h);
    for (int i = 0; i < S_; ++i) {
      const Eigen::Vector2d v = L * z.segment<2>(2 * i);
      out.v_hat[d_.state_codes[i]] = {v(0), v(1)};
    }
    for (int j = 0; j < P_; ++j) {
      out.u_hat[d_.pollster_names[j]] = su * z(2 * S_ + j);
    }
    return out;
  }

 private:
  static Eigen::Vector2d solve2(const Eigen::Matrix2d& A, const Eigen::Vector2d& b,
                                double det) {
    return Eigen::Vector2d((A(1, 1) * b(0) - A(0, 1) * b(1)) / det,
                           (A(0, 0) * b(1) - A(1, 0) * b(0)) / det);
  }

  Assembled assemble1(const VarianceComponents& vc) const {
    const double tau2 = vc.tau * vc.tau;
    if (!(tau2 > 0.0) || !std::isfinite(tau2)) return {};
    const Eigen::Matrix2d L = chol_g(vc);
    Assembled e;
    e.A.setZero();
    e.b.setZero();
    double csum = yty_;
    double logdet = 0.0;
    const double log_tau2 = std::log(tau2);
    for (int i = 0; i < S_; ++i) {
      const auto& s = st_[i];
      const double ni = s.n[0] + s.n[1];
      Eigen::Matrix2d C = tau2 * Eigen::Matrix2d::Identity();
      C += L.transpose() * Eigen::Vector2d(s.n[0], s.n[1]).asDiagonal() * L;
      const double det_c = C(0, 0) * C(1, 1) - C(0, 1) * C(1, 0);
      if (!(det_c > 0.0) || !std::isfinite(det_c)) return {};
      Eigen::Matrix2d Cinv;
      Cinv << C(1, 1), -C(0, 1), -C(1, 0), C(0, 0);
      Cinv /= det_c;
      const Eigen::Matrix2d M = L * Cinv * L.transpose();
      Eigen::Matrix2d Sx;  // Z'X: rows candidate, cols (intercept, indicator)
      Sx << s.n[0], 0.0, s.n[1], s.n[1];
      const Eigen::Vector2d sy(s.t[0], s.t[1]);
      Eigen::Matrix2d XtX;
      XtX << ni, s.n[1], s.n[1], s.n[1];
      const Eigen::Vector2d Xty(s.t[0] + s.t[1], s.t[1]);
      e.A += XtX - Sx.transpose() * M * Sx;
      e.b += Xty - Sx.transpose() * M * sy;
      csum -= sy.dot(M * sy);
      logdet += (ni - 2.0) * log_tau2 + std::log(det_c);
    }
    e.A /= tau2;
    e.b /= tau2;
    e.c = csum / tau2;
    e.logdet_v = logdet;
    e.ok = e.A.allFinite() && e.b.allFinite() && std::isfinite(e.c) && std::isfinite(logdet);
    return e;
  }

  Eigen::MatrixXd buildC(const VarianceComponents& vc, const Eigen::Matrix2d& L,
                         double su) const {
    const double tau2 = vc.tau * vc.tau;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(q_, q_);
    for (int i = 0; i < S_; ++i) {
      const auto& s = st_[i];
      Eigen::Matrix2d blk = tau2 * Eigen::Matrix2d::Identity();
      blk += L.transpose() * Eigen::Vector2d(s.n[0], s.n[1]).asDiagonal() * L;
      C.block<2, 2>(2 * i, 2 * i) = blk;
    }
    for (int j = 0; j < P_; ++j) {
      C(2 * S_ + j, 2 * S_ + j) = tau2 + su * su * m_all_[j];
    }
    for (const auto& x : cross_) {
      const double w0 = su * x.count * L(x.cand, 0);
      const double w1 = su * x.count * L(x.cand, 1);
      C(2 * x.state + 0, 2 * S_ + x.pollster) += w0;
      C(2 * x.state + 1, 2 * S_ + x.pollster) += w1;
      C(2 * S_ + x.pollster, 2 * x.state + 0) += w0;
      C(2 * S_ + x.pollster, 2 * x.state + 1) += w1;
    }
    return C;
  }

  Assembled assemble3(const VarianceComponents& vc) const {
    const double tau2 = vc.tau * vc.tau;
    if (!(tau2 > 0.0) || !std::isfinite(tau2)) return {};
    const Eigen::Matrix2d L = chol_g(vc);
    const double su = vc.sigma_u.value_or(0.0);
    Eigen::MatrixXd C = buildC(vc, L, su);
    Eigen::LLT<Eigen::MatrixXd> llt(C);
    if (llt.info() != Eigen::Success) return {};

    // W'Z'X (q x 2) and W'Z'y (q)
    Eigen::MatrixXd Ux = Eigen::MatrixXd::Zero(q_, 2);
    Eigen::VectorXd uy = Eigen::VectorXd::Zero(q_);
    for (int i = 0; i < S_; ++i) {
      const auto& s = st_[i];
      Eigen::Matrix2d Ri;
      Ri << s.n[0], 0.0, s.n[1], s.n[1];
      Ux.block<2, 2>(2 * i, 0) = L.transpose() * Ri;
      uy.segment<2>(2 * i) = L.transpose() * Eigen::Vector2d(s.t[0], s.t[1]);
    }
    for (int j = 0; j < P_; ++j) {
      Ux(2 * S_ + j, 0) = su * m_all_[j];
      Ux(2 * S_ + j, 1) = su * m_rep_[j];
      uy(2 * S_ + j) = su * t_poll_[j];
    }

    const Eigen::MatrixXd CiUx = llt.solve(Ux);
    const Eigen::VectorXd Ciuy = llt.solve(uy);

    Eigen::Matrix2d XtX;
    XtX << n_total_, n_rep_, n_rep_, n_rep_;
    const Eigen::Vector2d Xty(xty_[0], xty_[1]);

    Assembled e;
    e.A = (XtX - Ux.transpose() * CiUx) / tau2;
    e.b = (Xty - Ux.transpose() * Ciuy) / tau2;
    e.c = (yty_ - uy.dot(Ciuy)) / tau2;
    double logdet_c = 0.0;
    for (int i = 0; i < q_; ++i) logdet_c += std::log(llt.matrixLLT()(i, i));
    logdet_c *= 2.0;
    e.logdet_v = (n_total_ - static_cast<double>(q_)) * std::log(tau2) + logdet_c;
    e.ok = e.A.allFinite() && e.b.allFinite() && std::isfinite(e.c) &&
           std::isfinite(e.logdet_v);
    return e;
  }

  struct Cross {
    int state;
    int cand;
    int pollster;
    double count;
  };

  const DesignMatrices& d_;
  bool model3_;
  int S_ = 0, P_ = 0, q_ = 0;
  std::vector<StateStats> st_;
  std::vector<double> m_all_, m_rep_, t_poll_;
  std::vector<Cross> cross_;
  double yty_ = 0.0;
  double xty_[2] = {0.0, 0.0};
  double n_total_ = 0.0;
  double n_rep_ = 0.0;
};

// Method-of-moments starting point on the unconstrained scale.
std::vector<double> moments_init(const RemlProblem& prob, const DesignMatrices& d,
                                 bool model3) {
  const int S = d.n_states();
  double within_ss = 0.0;
  double groups = 0.0;
  std::vector<std::array<double, 2>> means(S, {0.0, 0.0});
  for (int i = 0; i < S; ++i) {
    const auto& s = prob.state_stats(i);
    for (int k = 0; k < 2; ++k) {
      if (s.n[k] > 0) {
        means[i][k] = s.t[k] / s.n[k];
        groups += 1.0;
      }
    }
  }
  double mu[2] = {0.0, 0.0};
  double nk[2] = {0.0, 0.0};
  for (std::size_t r = 0; r < d.n(); ++r) {
    const int k = d.candidate[r];
    const double dev = d.y[r] - means[d.state[r]][k];
    within_ss += dev * dev;
    mu[k] += d.y[r];
    nk[k] += 1.0;
  }
  for (int k = 0; k < 2; ++k) mu[k] = nk[k] > 0 ? mu[k] / nk[k] : 0.0;
  const double df = static_cast<double>(d.n()) - groups;
  double tau2 = df > 0.5 ? within_ss / df : 1e-2;
  if (!(tau2 > 1e-10)) tau2 = 1e-4;

  double sig2[2];
  for (int k = 0; k < 2; ++k) {
    double ss = 0.0, cnt = 0.0, inv_n = 0.0;
    for (int i = 0; i < S; ++i) {
      const auto& s = prob.state_stats(i);
      if (s.n[k] > 0) {
        ss += (means[i][k] - mu[k]) * (means[i][k] - mu[k]);
        inv_n += 1.0 / s.n[k];
        cnt += 1.0;
      }
    }
    const double between = cnt > 1.5 ? ss / (cnt - 1.0) : tau2;
    sig2[k] = std::max(between - tau2 * (cnt > 0 ? inv_n / cnt : 0.0), 1e-6);
  }
  double rho = 0.0;
  {
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < S; ++i) {
      const auto& s = prob.state_stats(i);
      if (s.n[0] > 0 && s.n[1] > 0) {
        const double a = means[i][0] - mu[0];
        const double b = means[i][1] - mu[1];
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
      }
    }
    if (sxx > 0 && syy > 0) rho = clamp(sxy / std::sqrt(sxx * syy), -0.9, 0.9);
  }

  std::vector<double> x{0.5 * std::log(sig2[0]), 0.5 * std::log(sig2[1]), std::atanh(rho),
                        0.5 * std::log(tau2)};
  if (model3) x.push_back(0.5 * std::log(std::max(tau2 / 4.0, 1e-6)));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = clamp(x[i], kLogLo, i == 2 ? kAtanhBox : kLogHi);
  }
  return x;
}

}  // namespace

void VarianceComponents::validate() const {
  if (!(sigma_d >= 0.0) || !std::isfinite(sigma_d)) throw Error("sigma_d must be >= 0");
  if (!(sigma_r >= 0.0) || !std::isfinite(sigma_r)) throw Error("sigma_r must be >= 0");
  if (!(rho > -1.0 && rho < 1.0)) throw Error("rho must lie in (-1,1)");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error("tau must be > 0");
  if (sigma_u && (!(*sigma_u >= 0.0) || !std::isfinite(*sigma_u))) {
    throw Error("sigma_u must be >= 0");
  }
}

VarianceComponents VarianceComponents::from_unconstrained(const std::vector<double>& x,
                                                          ModelVariant v) {
  const std::size_t want = v == ModelVariant::ModelIII ? 5 : 4;
  if (x.size() != want) throw Error("unconstrained parameter vector has wrong length");
  VarianceComponents vc;
  vc.sigma_d = std::exp(clamp(x[0], kLogLo, kLogHi));
  vc.sigma_r = std::exp(clamp(x[1], kLogLo, kLogHi));
  vc.rho = std::tanh(clamp(x[2], -kAtanhBox, kAtanhBox));
  vc.tau = std::exp(clamp(x[3], kLogLo, kLogHi));
  if (v == ModelVariant::ModelIII) vc.sigma_u = std::exp(clamp(x[4], kLogLo, kLogHi));
  return vc;
}

std::vector<double> VarianceComponents::to_unconstrained() const {
  auto safe_log = [](double v) { return clamp(std::log(std::max(v, 1e-300)), kLogLo, kLogHi); };
  std::vector<double> x{safe_log(sigma_d), safe_log(sigma_r),
                        clamp(std::atanh(clamp(rho, -0.999999999999, 0.999999999999)),
                              -kAtanhBox, kAtanhBox),
                        safe_log(tau)};
  if (sigma_u) x.push_back(safe_log(*sigma_u));
  return x;
}

double reml_objective(const VarianceComponents& vc, const DesignMatrices& design) {
  vc.validate();
  if (design.n() <= 2) throw Error("reml_objective: need more than 2 observations");
  RemlProblem prob(design, vc.sigma_u.has_value());
  return prob.objective(vc);
}

ModelFit fit_reml(const ModelSpec& spec, const DesignMatrices& design,
                  const OptimizerOptions& options) {
  const bool model3 = spec.variant == ModelVariant::ModelIII;
  if (design.n() <= 2) throw Error("fit_reml: need more than 2 observations");
  RemlProblem prob(design, model3);
  for (int i = 0; i < design.n_states(); ++i) {
    const auto& s = prob.state_stats(i);
    if (s.n[0] < 1 || s.n[1] < 1) {
      throw Error("fit_reml: state " + design.state_codes[i] +
                  " lacks observations for one candidate");
    }
  }

  const std::vector<double> init =
      options.initial_point ? *options.initial_point : moments_init(prob, design, model3);
  const std::size_t dims = model3 ? 5 : 4;
  if (init.size() != dims) throw Error("fit_reml: initial point has wrong dimension");

  auto f = [&](const std::vector<double>& x) {
    return prob.objective(VarianceComponents::from_unconstrained(x, spec.variant));
  };

  OptimizerTrace trace;
  SimplexResult best;
  best.value = kInf;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    std::vector<double> x0 = init;
    if (r > 0) {
      Rng rng(options.seed, static_cast<std::uint64_t>(r));
      for (auto& v : x0) v += rng.uniform(-1.0, 1.0);
    }
    SimplexResult res = nelder_mead(f, x0, options.initial_step, options.max_evaluations,
                                    options.ftol, options.xtol);
    trace.restarts.push_back({res.value, res.evaluations, res.converged});
    if (res.value < best.value || trace.best_restart < 0) {
      best = res;
      trace.best_restart = r;
    }
  }
  if (!std::isfinite(best.value)) {
    throw Error("fit_reml: objective not finite at every visited point");
  }

  ModelFit fit;
  fit.variant = spec.variant;
  fit.vc = VarianceComponents::from_unconstrained(best.x, spec.variant);
  const Eigen::Vector2d beta = prob.gls_beta(fit.vc);
  fit.beta0 = beta(0);
  fit.beta1 = beta(1);
  const Blups bl = prob.blups(fit.beta0, fit.beta1, fit.vc);
  fit.v_hat = bl.v_hat;
  fit.u_hat = bl.u_hat;
  fit.reml_loglik = -0.5 * best.value;
  fit.converged = best.converged;
  fit.n_obs = static_cast<int>(design.n());
  fit.options = options;
  fit.trace = trace;
  return fit;
}

Blups compute_blups(double beta0, double beta1, const VarianceComponents& vc,
                    const DesignMatrices& design) {
  RemlProblem prob(design, vc.sigma_u.has_value());
  return prob.blups(beta0, beta1, vc);
}

double eblup_theta(const ModelFit& fit, const std::string& state, Candidate candidate,
                   const std::vector<std::string>* pollsters_2024) {
  auto it = fit.v_hat.find(state);
  if (it == fit.v_hat.end()) {
    throw Error("eblup_theta: state " + state + " not present in the fitted model");
  }
  const int k = candidate == Candidate::Rep ? 1 : 0;
  double theta = fit.beta0 + (k ? fit.beta1 : 0.0) + it->second[k];
  if (fit.variant == ModelVariant::ModelIII && pollsters_2024 && !pollsters_2024->empty()) {
    double u_sum = 0.0;
    for (const auto& p : *pollsters_2024) {
      auto ju = fit.u_hat.find(p);
      if (ju != fit.u_hat.end()) u_sum += ju->second;  // unseen pollster: u = 0
    }
    theta += u_sum / static_cast<double>(pollsters_2024->size());
  }
  return theta;
}

ParamBootstrap bootstrap_param_se(const ModelFit& fit, const DesignMatrices& design, int B,
                                  std::uint64_t seed) {
  if (B < 2) throw Error("bootstrap_param_se: B must be >= 2");
  if (!fit.converged) throw Error("bootstrap_param_se: base fit did not converge");
  const bool model3 = fit.variant == ModelVariant::ModelIII;
  const int S = design.n_states();
  const int P = model3 ? design.n_pollsters() : 0;
  const Eigen::Matrix2d L = chol_g(fit.vc);
  const double su = fit.vc.sigma_u.value_or(0.0);
  const std::vector<double> warm = fit.vc.to_unconstrained();

  const std::size_t n_params = model3 ? 7 : 6;
  std::vector<std::vector<double>> draws(B, std::vector<double>());
  std::vector<char> kept(B, 0);

  parallel_for(B, [&](int b) {
    Rng rng(seed, static_cast<std::uint64_t>(b));
    std::vector<std::array<double, 2>> v(S);
    for (int i = 0; i < S; ++i) {
      const Eigen::Vector2d z(rng.normal(), rng.normal());
      const Eigen::Vector2d vi = L * z;
      v[i] = {vi(0), vi(1)};
    }
    std::vector<double> u(P, 0.0);
    for (int j = 0; j < P; ++j) u[j] = su * rng.normal();

    DesignMatrices db = design;
    for (std::size_t r = 0; r < db.n(); ++r) {
      const int k = db.candidate[r];
      double mean = fit.beta0 + (k ? fit.beta1 : 0.0) + v[db.state[r]][k];
      if (model3) mean += u[db.pollster[r]];
      db.y[r] = mean + fit.vc.tau * rng.normal();
    }

    OptimizerOptions opts = fit.options;
    opts.restarts = 1;
    opts.initial_point = warm;
    ModelFit refit = fit_reml(ModelSpec{fit.variant}, db, opts);
    if (!refit.converged) return;
    std::vector<double> row{refit.beta0, refit.beta1, refit.vc.sigma_d, refit.vc.rho,
                            refit.vc.sigma_r, refit.vc.tau};
    if (model3) row.push_back(*refit.vc.sigma_u);
    draws[b] = std::move(row);
    kept[b] = 1;
  });

  std::vector<std::vector<double>> by_param(n_params);
  int dropped = 0;
  for (int b = 0; b < B; ++b) {
    if (!kept[b]) {
      ++dropped;
      continue;
    }
    for (std::size_t p = 0; p < n_params; ++p) by_param[p].push_back(draws[b][p]);
  }
  if (dropped * 10 > B) {
    throw Error("bootstrap_param_se: " + std::to_string(dropped) + " of " + std::to_string(B) +
                " replicates failed to converge");
  }

  const double estimates[7] = {fit.beta0,       fit.beta1,    fit.vc.sigma_d, fit.vc.rho,
                               fit.vc.sigma_r,  fit.vc.tau,   su};
  const char* names[7] = {"beta0", "beta1", "sigma_d", "rho", "sigma_r", "tau", "sigma_u"};
  const char* groups[7] = {"Fixed", "Fixed", "State", "State", "State", "Residual", "Pollster"};

  ParamBootstrap out;
  out.B = B;
  out.dropped = dropped;
  for (std::size_t p = 0; p < n_params; ++p) {
    ParamBootstrapEntry e;
    e.name = names[p];
    e.group = groups[p];
    e.estimate = estimates[p];
    e.se = stats::sample_sd(by_param[p]);
    e.t = e.se > 0.0 ? e.estimate / e.se : 0.0;
    out.entries.push_back(std::move(e));
  }
  return out;
}

std::string model_fit_json(const ModelFit& fit) {
  nlohmann::json j;
  j["variant"] = fit.variant == ModelVariant::ModelIII ? "ModelIII" : "ModelI";
  j["beta0"] = fit.beta0;
  j["beta1"] = fit.beta1;
  nlohmann::json vc;
  vc["sigma_d"] = fit.vc.sigma_d;
  vc["sigma_r"] = fit.vc.sigma_r;
  vc["rho"] = fit.vc.rho;
  vc["tau"] = fit.vc.tau;
  if (fit.vc.sigma_u) vc["sigma_u"] = *fit.vc.sigma_u;
  j["variance_components"] = vc;
  nlohmann::json v;
  for (const auto& [state, pair] : fit.v_hat) v[state] = {pair[0], pair[1]};
  j["v_hat"] = v;
  nlohmann::json u(nlohmann::json::value_t::object);
  for (const auto& [pollster, val] : fit.u_hat) u[pollster] = val;
  j["u_hat"] = u;
  j["reml_loglik"] = fit.reml_loglik;
  j["converged"] = fit.converged;
  j["n_obs"] = fit.n_obs;
  nlohmann::json opts;
  opts["restarts"] = fit.options.restarts;
  opts["max_evaluations"] = fit.options.max_evaluations;
  opts["ftol"] = fit.options.ftol;
  opts["xtol"] = fit.options.xtol;
  opts["seed"] = fit.options.seed;
  opts["initial_step"] = fit.options.initial_step;
  j["options"] = opts;
  nlohmann::json restarts = nlohmann::json::array();
  for (const auto& r : fit.trace.restarts) {
    restarts.push_back({{"value", r.value},
                        {"evaluations", r.evaluations},
                        {"converged", r.converged}});
  }
  j["trace"] = {{"restarts", restarts}, {"best_restart", fit.trace.best_restart}};
  j["dataset_fingerprint"] = fit.dataset_fingerprint;
  return j.dump(2) + "\n";
}

}  // namespace saep
