#include "evidencepath/samplers.hpp"

#include <cmath>
#include <stdexcept>

#include "evidencepath/stats.hpp"

namespace evidencepath {

Eigen::VectorXd annealed_proposal_scales(Eigen::Index dim, double tau) {
  const double d = tau > 0.0 ? std::min(0.01 / tau, 100.0) : 100.0;
  return Eigen::VectorXd::Constant(dim, d);
}

Eigen::VectorXd direct_path_proposal_scales(Eigen::Index dim,
                                            Eigen::Index n_annealed,
                                            double tau) {
  if (n_annealed < 0 || n_annealed > dim) {
    throw std::invalid_argument("direct_path_proposal_scales: bad block size");
  }
  Eigen::VectorXd d = Eigen::VectorXd::Constant(dim, 0.01);
  const double anneal = tau > 0.0 ? std::min(0.01 / tau, 100.0) : 100.0;
  d.tail(n_annealed).setConstant(anneal);
  return d;
}

double mh_accept_prob(const TemperedTarget& target, const ParameterVector& theta,
                      const ParameterVector& theta_new, InverseTemperature tau,
                      double log_q_fwd, double log_q_bwd) {
  if (!std::isfinite(log_q_fwd) || !std::isfinite(log_q_bwd)) {
    throw std::domain_error("mh_accept_prob: non-finite proposal density");
  }
  const double t = tau.value();
  const double d_l1 = target.log_lik1(theta_new) - target.log_lik1(theta);
  const double d_l2 = target.log_lik2(theta_new) - target.log_lik2(theta);
  const double d_lp = target.log_prior(theta_new) - target.log_prior(theta);
  if (std::isnan(d_l1) || std::isnan(d_l2) || std::isnan(d_lp)) {
    throw std::domain_error("mh_accept_prob: non-finite tempered density");
  }
  const double log_a =
      t * d_l2 + (1.0 - t) * d_l1 + d_lp + (log_q_bwd - log_q_fwd);
  return log_a >= 0.0 ? 1.0 : std::exp(log_a);
}

GaussianConditional tempered_gaussian_conditional(
    const Eigen::MatrixXd& gram1, const Eigen::MatrixXd& gram2,
    const Eigen::VectorXd& dty1, const Eigen::VectorXd& dty2, double tau,
    const Eigen::VectorXd& prior_mean, const Eigen::VectorXd& prior_precision,
    double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::domain_error("tempered_gaussian_conditional: sigma2 <= 0");
  }
  GaussianConditional cond;
  cond.precision_scaled = tau * gram2 + (1.0 - tau) * gram1;
  cond.precision_scaled.diagonal() += prior_precision;
  const Eigen::VectorXd rhs = tau * dty2 + (1.0 - tau) * dty1 +
                              prior_precision.cwiseProduct(prior_mean);
  const Eigen::LLT<Eigen::MatrixXd> llt(cond.precision_scaled);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("tempered_gaussian_conditional: H not SPD");
  }
  cond.mean = llt.solve(rhs);
  cond.noise_var = sigma2;
  return cond;
}

ParameterVector sample_gaussian_conditional(const GaussianConditional& cond,
                                            RngStream& rng) {
  // theta = mu + sigma * L^-T z with H = L L'.
  const Eigen::LLT<Eigen::MatrixXd> llt(cond.precision_scaled);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("sample_gaussian_conditional: H not SPD");
  }
  Eigen::VectorXd z(cond.mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  const Eigen::VectorXd w =
      llt.matrixU().solve(std::sqrt(cond.noise_var) * z);
  return cond.mean + w;
}

ParameterVector gibbs_linear_coefficients(const Eigen::MatrixXd& design1,
                                          const Eigen::MatrixXd& design2,
                                          const Eigen::VectorXd& y, double tau,
                                          const Eigen::VectorXd& prior_mean,
                                          double delta2, double sigma2,
                                          RngStream& rng) {
  if (design1.rows() != design2.rows() || design1.cols() != design2.cols()) {
    throw std::invalid_argument(
        "gibbs_linear_coefficients: designs must share shape");
  }
  if (!(delta2 > 0.0)) {
    throw std::domain_error("gibbs_linear_coefficients: delta2 <= 0");
  }
  const Eigen::index p = design1.cols();
  const Eigen::VectorXd prior_prec =
      Eigen::VectorXd::Constant(p, 1.0 / delta2);
  const GaussianConditional cond = tempered_gaussian_conditional(
      design1.transpose() * design1, design2.transpose() * design2,
      design1.transpose() * y, design2.transpose() * y, tau, prior_mean,
      prior_prec, sigma2);
  return sample_gaussian_conditional(cond, rng);
}

InverseGammaConditional noise_variance_conditional(
    const Eigen::MatrixXd& design1, const Eigen::MatrixXd& design2,
    const Eigen::VectorXd& y, const ParameterVector& theta, double tau,
    const Eigen::VectorXd& prior_mean, double delta2, double a, double b) {
  if (!(a > 0.0 && b > 0.0 && delta2 > 0.0)) {
    throw std::domain_error("noise_variance_conditional: a, b, delta2 > 0");
  }
  const double n = static_cast<double>(y.size());
  const double p = static_cast<double>(theta.size());
  const double r1 = (design1 * theta - y).squaredNorm();
  const double r2 = (design2 * theta - y).squaredNorm();
  const double rp = (theta - prior_mean).squaredNorm() / delta2;
  InverseGammaConditional cond;
  cond.shape = 0.5 * (a + n + p);
  cond.rate = 0.5 * (b + (1.0 - tau) * r1 + tau * r2 + rp);
  if (!(cond.rate > 0.0)) {
    throw std::domain_error("noise_variance_conditional: rate <= 0");
  }
  return cond;
}

double gibbs_noise_variance(const Eigen::MatrixXd& design1,
                            const Eigen::MatrixXd& design2,
                            const Eigen::VectorXd& y,
                            const ParameterVector& theta, double tau,
                            const Eigen::VectorXd& prior_mean, double delta2,
                            double a, double b, RngStream& rng) {
  const InverseGammaConditional cond = noise_variance_conditional(
      design1, design2, y, theta, tau, prior_mean, delta2, a, b);
  return 1.0 / rng.gamma(cond.shape, cond.rate);
}

double sample_truncnorm_lower(double mean, double sd, double lower,
                              RngStream& rng) {
  if (!(sd > 0.0)) throw std::domain_error("sample_truncnorm_lower: sd <= 0");
  const double a = (lower - mean) / sd;
  if (a <= 10.0) {
    // z = -Phi^-1((1-u) * Phi_c(a)), exact inverse CDF on the upper tail.
    const double tail = norm_cdf_upper(a);
    const double v = (1.0 - rng.uniform()) * tail;
    const double z = -norm_ppf(std::max(v, 5e-324));
    return mean + sd * std::max(z, a);
  }
  // Deep truncation: shifted-exponential rejection (Robert 1995), exact.
  const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (int i = 0; i < 1000; ++i) {
    const double e = -std::log(rng.uniform_pos()) / lambda;
    const double z = a + e;
    const double d = z - lambda;
    if (std::log(rng.uniform_pos()) <= -0.5 * d * d) return mean + sd * z;
  }
  return mean + sd * a;  // unreachable in practice; bounds the loop
}

Eigen::VectorXd sample_truncated_normal_diag(const Eigen::VectorXd& mean,
                                             const Eigen::VectorXd& var_diag,
                                             RngStream& rng) {
  Eigen::VectorXd x(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    x[i] = sample_truncnorm_lower(mean[i], std::sqrt(var_diag[i]), 0.0, rng);
  }
  return x;
}

Eigen::VectorXd sample_truncated_normal(const Eigen::VectorXd& mean,
                                        const Eigen::MatrixXd& cov,
                                        RngStream& rng) {
  const Eigen::Index p = mean.size();
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("sample_truncated_normal: covariance not SPD");
  }
  Eigen::VectorXd z(p);
  for (int attempt = 0; attempt < 100; ++attempt) {
    for (Eigen::Index i = 0; i < p; ++i) z[i] = rng.normal();
    Eigen::VectorXd x = mean + llt.matrixL() * z;
    if ((x.array() >= 0.0).all()) return x;
  }
  // Gibbs fallback on the precision matrix.
  const Eigen::MatrixXd prec =
      llt.solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::VectorXd x = mean.cwiseMax(1e-8);
  for (int sweep = 0; sweep < 100; ++sweep) {
    for (Eigen::Index i = 0; i < p; ++i) {
      double shift = 0.0;
      for (Eigen::Index j = 0; j < p; ++j) {
        if (j != i) shift += prec(i, j) * (x[j] - mean[j]);
      }
      const double cm = mean[i] - shift / prec(i, i);
      const double cs = std::sqrt(1.0 / prec(i, i));
      x[i] = sample_truncnorm_lower(cm, cs, 0.0, rng);
    }
  }
  return x;
}

}  // namespace evidencepath
