#include "evidencepath/models/linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evidencepath/samplers.hpp"
#include "evidencepath/stats.hpp"

namespace evidencepath {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

void LinearModelPair::validate() const {
  if (design1.rows() != design2.rows() || design1.cols() != design2.cols()) {
    throw std::invalid_argument("LinearModelPair: designs must share shape");
  }
  if (design1.rows() != y.size()) {
    throw std::invalid_argument("LinearModelPair: y length mismatch");
  }
  if (prior_mean.size() != design1.cols() ||
      prior_var_diag.size() != design1.cols()) {
    throw std::invalid_argument("LinearModelPair: prior dimension mismatch");
  }
  if ((prior_var_diag.array() <= 0.0).any()) {
    throw std::domain_error("LinearModelPair: prior variances must be > 0");
  }
  if (!(noise_shape > 0.0 && noise_rate > 0.0)) {
    throw std::domain_error("LinearModelPair: noise prior must be proper");
  }
}

LinearModelPair pad_design_matrix_pair(const Dataset& data,
                                       const std::vector<std::string>& cols1,
                                       const std::vector<std::string>& cols2) {
  auto contains = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  // union order: shared first, then model-1-only, then model-2-only
  std::vector<std::string> order;
  for (const auto& c : cols1) {
    if (contains(cols2, c)) order.push_back(c);
  }
  for (const auto& c : cols1) {
    if (!contains(cols2, c)) order.push_back(c);
  }
  for (const auto& c : cols2) {
    if (!contains(cols1, c)) order.push_back(c);
  }

  const Eigen::Index n = data.n();
  const Eigen::Index p = static_cast<Eigen::Index>(order.size());
  LinearModelPair pair;
  pair.design1 = Eigen::MatrixXd::Zero(n, p);
  pair.design2 = Eigen::MatrixXd::Zero(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const Eigen::VectorXd col = data.covariates.col(data.column(order[j]));
    if (contains(cols1, order[j])) pair.design1.col(j) = col;
    if (contains(cols2, order[j])) pair.design2.col(j) = col;
  }
  pair.y = data.responses;
  pair.prior_mean = Eigen::VectorXd::Zero(p);
  pair.prior_var_diag = Eigen::VectorXd::Ones(p);
  return pair;
}

double linear_log_marginal(const Eigen::MatrixXd& design,
                           const Eigen::VectorXd& y, double a, double b,
                           double delta2) {
  if (!(a > 0.0 && b > 0.0 && delta2 > 0.0)) {
    throw std::domain_error("linear_log_marginal: a, b, delta2 > 0");
  }
  const double n = static_cast<double>(y.size());
  const Eigen::Index p = design.cols();
  Eigen::MatrixXd inner = delta2 * design.transpose() * design;
  inner.diagonal().array() += 1.0;
  const Eigen::LLT<Eigen::MatrixXd> llt(inner);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("linear_log_marginal: inner matrix not SPD");
  }
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    logdet += 2.0 * std::log(llt.matrixL()(i, i));
  }
  const Eigen::VectorXd dty = design.transpose() * y;
  const double quad = y.squaredNorm() - delta2 * dty.dot(llt.solve(dty));
  return std::lgamma(0.5 * (n + a)) - std::lgamma(0.5 * a) +
         0.5 * a * std::log(b) - 0.5 * n * std::log(M_PI) - 0.5 * logdet -
         0.5 * (n + a) * std::log(b + quad);
}

double linear_log_marginal_quadrature(const Eigen::MatrixXd& design,
                                      const Eigen::VectorXd& y,
                                      const Eigen::VectorXd& prior_mean,
                                      const Eigen::VectorXd& prior_var_diag,
                                      double noise_shape, double noise_rate) {
  const Eigen::Index n = y.size();
  if (n == 0) return 0.0;  // empty product
  // y | s2 ~ N(D mu0, s2 (I + D S0 D')). Work with the p-dimensional forms:
  //   log det(I + D S0 D') = log det(I + S0 D'D)
  //   r'(I + D S0 D')^-1 r = r'r - (D'r)' (S0^-1 + D'D)^-1 (D'r).
  const Eigen::Index p = design.cols();
  const Eigen::VectorXd r = y - design * prior_mean;
  const Eigen::MatrixXd gram = design.transpose() * design;
  Eigen::MatrixXd inner = gram;
  inner.diagonal() += prior_var_diag.cwiseInverse();
  const Eigen::VectorXd dtr = design.transpose() * r;
  const Eigen::LLT<Eigen::MatrixXd> llt(inner);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("linear_log_marginal_quadrature: not SPD");
  }
  const double quad = r.squaredNorm() - dtr.dot(llt.solve(dtr));
  Eigen::MatrixXd scaled = gram;
  for (Eigen::Index j = 0; j < p; ++j) scaled.col(j) *= prior_var_diag[j];
  scaled.diagonal().array() += 1.0;
  const double logdet = scaled.partialPivLu().matrixLU().diagonal().array()
                            .abs().log().sum();

  const double nn = static_cast<double>(n);
  // integrate over u = log(phi), phi = sigma^-2
  auto log_f = [&](double u) {
    const double phi = std::exp(u);
    const double log_gauss = 0.5 * nn * std::log(phi) -
                             0.5 * nn * kLog2Pi - 0.5 * logdet -
                             0.5 * phi * quad;
    const double log_gamma_prior = noise_shape * std::log(noise_rate) -
                                   std::lgamma(noise_shape) +
                                   (noise_shape - 1.0) * u - noise_rate * phi;
    return log_gauss + log_gamma_prior + u;  // + u: Jacobian of phi = e^u
  };
  // Bracket the peak: the integrand mode is near the posterior of phi.
  const double phi_hat = (noise_shape + 0.5 * nn) / (noise_rate + 0.5 * quad);
  const double lo = std::log(phi_hat) - 40.0;
  const double hi = std::log(phi_hat) + 40.0;
  return log_integral_exp(log_f, lo, hi, 1e-10);
}

double radiata_log_marginal(const LinearModelPair& pair, int model) {
  pair.validate();
  if (model != 1 && model != 2) {
    throw std::invalid_argument("radiata_log_marginal: model is 1 or 2");
  }
  const Eigen::MatrixXd& design = model == 1 ? pair.design1 : pair.design2;
  return linear_log_marginal_quadrature(design, pair.y, pair.prior_mean,
                                        pair.prior_var_diag, pair.noise_shape,
                                        pair.noise_rate);
}

double linear_log_likelihood(const Eigen::MatrixXd& design,
                             const Eigen::VectorXd& y,
                             const ParameterVector& theta, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::domain_error(
        "linear_log_likelihood: coordinate 'sigma2' must be > 0");
  }
  const double n = static_cast<double>(y.size());
  return -0.5 * n * (kLog2Pi + std::log(sigma2)) -
         0.5 * (design * theta - y).squaredNorm() / sigma2;
}

TemperedTarget make_linear_target(const LinearModelPair& pair) {
  pair.validate();
  const Eigen::Index p = pair.design1.cols();
  TemperedTarget target;
  target.dim = p + 1;  // (theta..., sigma2)
  auto split = [p](const ParameterVector& x) {
    return std::pair<ParameterVector, double>(x.head(p), x[p]);
  };
  target.log_lik1 = [pair, split](const ParameterVector& x) {
    auto [th, s2] = split(x);
    return linear_log_likelihood(pair.design1, pair.y, th, s2);
  };
  target.log_lik2 = [pair, split](const ParameterVector& x) {
    auto [th, s2] = split(x);
    return linear_log_likelihood(pair.design2, pair.y, th, s2);
  };
  target.log_prior = [pair, split, p](const ParameterVector& x) {
    auto [th, s2] = split(x);
    if (!(s2 > 0.0)) {
      throw std::domain_error("linear prior: coordinate 'sigma2' must be > 0");
    }
    double lp = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double v = s2 * pair.prior_var_diag[j];
      const double d = th[j] - pair.prior_mean[j];
      lp += -0.5 * (kLog2Pi + std::log(v)) - 0.5 * d * d / v;
    }
    // sigma^-2 ~ Gamma(shape, rate) expressed as a density in sigma^2
    const double phi = 1.0 / s2;
    lp += pair.noise_shape * std::log(pair.noise_rate) -
          std::lgamma(pair.noise_shape) + (pair.noise_shape + 1.0) * std::log(phi) -
          pair.noise_rate * phi;
    return lp;
  };
  return target;
}

LinearPairKernel::LinearPairKernel(LinearModelPair pair, bool swap_models)
    : pair_(std::move(pair)) {
  pair_.validate();
  if (swap_models) std::swap(pair_.design1, pair_.design2);
  gram1_ = pair_.design1.transpose() * pair_.design1;
  gram2_ = pair_.design2.transpose() * pair_.design2;
  dty1_ = pair_.design1.transpose() * pair_.y;
  dty2_ = pair_.design2.transpose() * pair_.y;
  prior_prec_ = pair_.prior_var_diag.cwiseInverse();
  yty_ = pair_.y.squaredNorm();
  theta_ = pair_.prior_mean;
}

void LinearPairKernel::initialize(RngStream& rng) {
  theta_ = pair_.prior_mean;
  sigma2_ = 1.0 / rng.gamma(pair_.noise_shape, pair_.noise_rate);
}

double LinearPairKernel::residual2(const Eigen::MatrixXd& gram,
                                   const Eigen::VectorXd& dty,
                                   const ParameterVector& th) const {
  const double r = th.dot(gram * th) - 2.0 * th.dot(dty) + yty_;
  return std::max(r, 0.0);
}

void LinearPairKernel::step(double tau, RngStream& rng) {
  const GaussianConditional cond = tempered_gaussian_conditional(
      gram1_, gram2_, dty1_, dty2_, tau, pair_.prior_mean, prior_prec_,
      sigma2_);
  theta_ = sample_gaussian_conditional(cond, rng);

  const double n = static_cast<double>(pair_.y.size());
  const double p = static_cast<double>(theta_.size());
  const double r1 = residual2(gram1_, dty1_, theta_);
  const double r2 = residual2(gram2_, dty2_, theta_);
  const Eigen::VectorXd d = theta_ - pair_.prior_mean;
  const double rp = d.cwiseProduct(prior_prec_).dot(d);
  const double shape = pair_.noise_shape + 0.5 * (n + p);
  const double rate =
      pair_.noise_rate + 0.5 * ((1.0 - tau) * r1 + tau * r2 + rp);
  sigma2_ = 1.0 / rng.gamma(shape, rate);
}

double LinearPairKernel::log_lik_ratio() const {
  // the (2 pi sigma^2)^(-n/2) factors cancel in the ratio
  const double r1 = residual2(gram1_, dty1_, theta_);
  const double r2 = residual2(gram2_, dty2_, theta_);
  return 0.5 * (r1 - r2) / sigma2_;
}

LinearSingleKernel::LinearSingleKernel(Eigen::MatrixXd design,
                                       Eigen::VectorXd y,
                                       Eigen::VectorXd prior_mean,
                                       Eigen::VectorXd prior_var_diag,
                                       double noise_shape, double noise_rate)
    : design_(std::move(design)),
      y_(std::move(y)),
      prior_mean_(std::move(prior_mean)),
      prior_prec_(prior_var_diag.cwiseInverse()),
      noise_shape_(noise_shape),
      noise_rate_(noise_rate) {
  gram_ = design_.transpose() * design_;
  dty_ = design_.transpose() * y_;
  yty_ = y_.squaredNorm();
  theta_ = prior_mean_;
}

void LinearSingleKernel::initialize(RngStream& rng) {
  theta_ = prior_mean_;
  sigma2_ = 1.0 / rng.gamma(noise_shape_, noise_rate_);
}

void LinearSingleKernel::step(double tau, RngStream& rng) {
  // likelihood^tau * prior: H = tau G + S0^-1
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(gram_.rows(), gram_.cols());
  const Eigen::VectorXd zvec = Eigen::VectorXd::Zero(dty_.size());
  const GaussianConditional cond = tempered_gaussian_conditional(
      zero, gram_, zvec, dty_, tau, prior_mean_, prior_prec_, sigma2_);
  theta_ = sample_gaussian_conditional(cond, rng);

  const double n = static_cast<double>(y_.size());
  const double p = static_cast<double>(theta_.size());
  const double r =
      std::max(theta_.dot(gram_ * theta_) - 2.0 * theta_.dot(dty_) + yty_, 0.0);
  const Eigen::VectorXd d = theta_ - prior_mean_;
  const double rp = d.cwiseProduct(prior_prec_).dot(d);
  const double shape = noise_shape_ + 0.5 * (tau * n + p);
  const double rate = noise_rate_ + 0.5 * (tau * r + rp);
  sigma2_ = 1.0 / rng.gamma(shape, rate);
}

double LinearSingleKernel::log_lik() const {
  const double n = static_cast<double>(y_.size());
  const double r =
      std::max(theta_.dot(gram_ * theta_) - 2.0 * theta_.dot(dty_) + yty_, 0.0);
  return -0.5 * n * (kLog2Pi + std::log(sigma2_)) - 0.5 * r / sigma2_;
}

}  // namespace evidencepath
