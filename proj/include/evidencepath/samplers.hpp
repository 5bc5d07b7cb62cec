#pragma once

#include <Eigen/Dense>

#include "evidencepath/core.hpp"
#include "evidencepath/rng.hpp"

namespace evidencepath {

/// Tempered Gaussian full conditional N(mean, noise_var * H^-1) with
/// precision-scaled matrix H = tau D2'D2 + (1-tau) D1'D1 + prior precision.
struct GaussianConditional {
  Eigen::MatrixXd precision_scaled;  // H
  Eigen::VectorXd mean;              // mu
  double noise_var = 1.0;            // sigma^2
};

/// Tempered inverse-gamma conditional for the noise precision:
/// sigma^-2 ~ Gamma(shape, rate).
struct InverseGammaConditional {
  double shape = 1.0;
  double rate = 1.0;
};

/// Random-walk proposal scales. With tau_dependent set, annealed coordinates
/// use d_i = min(0.01 / tau, 100) while shared coordinates stay at 0.01.
struct ProposalSpec {
  Eigen::VectorXd step_scales;  // diagonal covariance entries d_i
  bool tau_dependent = false;
};

/// Diagonal proposal covariance for a logistic-regression random walk:
/// every coordinate annealed (single-model power posterior).
Eigen::VectorXd annealed_proposal_scales(Eigen::Index dim, double tau);

/// Direct-path variant: only the trailing `n_annealed` coordinates anneal,
/// the shared block keeps the fixed 0.01 scale.
Eigen::VectorXd direct_path_proposal_scales(Eigen::Index dim,
                                            Eigen::Index n_annealed,
                                            double tau);

/// Metropolis-Hastings acceptance probability for the tempered two-model
/// target, computed in log space:
/// min{1, exp[(tau dlogL2 + (1-tau) dlogL1 + dlog prior) + (log_q_bwd -
/// log_q_fwd)]}.
double mh_accept_prob(const TemperedTarget& target, const ParameterVector& theta,
                      const ParameterVector& theta_new, InverseTemperature tau,
                      double log_q_fwd, double log_q_bwd);

/// H and mu of the tempered Gaussian conditional, general diagonal prior
/// precision. Exposed separately from the draw so conditionals can be
/// compared across modules.
GaussianConditional tempered_gaussian_conditional(
    const Eigen::MatrixXd& gram1, const Eigen::MatrixXd& gram2,
    const Eigen::VectorXd& dty1, const Eigen::VectorXd& dty2, double tau,
    const Eigen::VectorXd& prior_mean, const Eigen::VectorXd& prior_precision,
    double sigma2);

/// Draw theta ~ N(mu, sigma^2 H^-1) with
///   H  = tau D2'D2 + (1-tau) D1'D1 + delta^-2 I
///   mu = H^-1([tau D2' + (1-tau) D1'] y + delta^-2 mu0).
ParameterVector gibbs_linear_coefficients(const Eigen::MatrixXd& design1,
                                          const Eigen::MatrixXd& design2,
                                          const Eigen::VectorXd& y, double tau,
                                          const Eigen::VectorXd& prior_mean,
                                          double delta2, double sigma2,
                                          RngStream& rng);

/// Draw from a GaussianConditional (Cholesky of H).
ParameterVector sample_gaussian_conditional(const GaussianConditional& cond,
                                            RngStream& rng);

/// Tempered noise-variance conditional parameters: shape = (a+n+p)/2,
/// rate = (b + (1-tau)|D1 th - y|^2 + tau|D2 th - y|^2
///           + delta^-2 |th - mu0|^2) / 2.
InverseGammaConditional noise_variance_conditional(
    const Eigen::MatrixXd& design1, const Eigen::MatrixXd& design2,
    const Eigen::VectorXd& y, const ParameterVector& theta, double tau,
    const Eigen::VectorXd& prior_mean, double delta2, double a, double b);

/// Draw sigma^-2 ~ Gamma(shape, rate) from the conditional above and return
/// sigma^2.
double gibbs_noise_variance(const Eigen::MatrixXd& design1,
                            const Eigen::MatrixXd& design2,
                            const Eigen::VectorXd& y,
                            const ParameterVector& theta, double tau,
                            const Eigen::VectorXd& prior_mean, double delta2,
                            double a, double b, RngStream& rng);

/// N(mean, sd^2) conditioned on x >= lower. Exact: inverse-CDF in the
/// well-conditioned range, exponential tail rejection beyond.
double sample_truncnorm_lower(double mean, double sd, double lower,
                              RngStream& rng);

/// Coordinate-wise exact draws for a diagonal covariance, all coords >= 0.
Eigen::VectorXd sample_truncated_normal_diag(const Eigen::VectorXd& mean,
                                             const Eigen::VectorXd& var_diag,
                                             RngStream& rng);

/// Non-negative-orthant truncation of N(mean, cov). Rejection from the
/// untruncated Gaussian capped at 100 attempts, then per-coordinate Gibbs
/// sweeps; never loops unboundedly.
Eigen::VectorXd sample_truncated_normal(const Eigen::VectorXd& mean,
                                        const Eigen::MatrixXd& cov,
                                        RngStream& rng);

}  // namespace evidencepath
