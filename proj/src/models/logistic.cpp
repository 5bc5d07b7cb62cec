#include "evidencepath/models/logistic.hpp"

#include <cmath>
#include <stdexcept>

#include "evidencepath/samplers.hpp"
#include "evidencepath/stats.hpp"

namespace evidencepath {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

void LogisticModel::validate() const {
  if (covariates.rows() != y.size()) {
    throw std::invalid_argument("LogisticModel: row count mismatch");
  }
  if (covariates.cols() < 1 ||
      (covariates.col(0).array() != 1.0).any()) {
    throw std::invalid_argument(
        "LogisticModel: first column must be the intercept (all ones)");
  }
  if (((y.array() != 0.0) && (y.array() != 1.0)).any()) {
    throw std::invalid_argument("LogisticModel: responses must be 0/1");
  }
  if (!(delta2 > 0.0)) {
    throw std::domain_error("LogisticModel: delta2 must be > 0");
  }
}

double logistic_log_likelihood(const LogisticModel& model,
                               const ParameterVector& theta) {
  if (theta.size() != model.covariates.cols()) {
    throw std::invalid_argument("logistic_log_likelihood: dimension mismatch");
  }
  const Eigen::VectorXd s = model.covariates * theta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    ll += -model.y[i] * s[i] - log1p_exp(-s[i]);
  }
  return ll;
}

void LogisticModelPair::validate() const {
  wide.validate();
  if (shared < 1 || shared > wide.covariates.cols()) {
    throw std::invalid_argument("LogisticModelPair: bad shared block");
  }
}

namespace {

double gaussian_log_prior(const ParameterVector& th, double delta2) {
  return -0.5 * th.size() * (kLog2Pi + std::log(delta2)) -
         0.5 * th.squaredNorm() / delta2;
}

LogisticModel narrow_view(const LogisticModelPair& pair) {
  LogisticModel m;
  m.covariates = pair.wide.covariates.leftCols(pair.shared);
  m.y = pair.wide.y;
  m.delta2 = pair.wide.delta2;
  return m;
}

}  // namespace

TemperedTarget make_logistic_target(const LogisticModelPair& pair) {
  pair.validate();
  const LogisticModel narrow = narrow_view(pair);
  const LogisticModel wide = pair.wide;
  const Eigen::Index shared = pair.shared;
  TemperedTarget target;
  target.dim = wide.covariates.cols();
  target.log_lik1 = [narrow, shared](const ParameterVector& th) {
    return logistic_log_likelihood(narrow, th.head(shared).eval());
  };
  target.log_lik2 = [wide](const ParameterVector& th) {
    return logistic_log_likelihood(wide, th);
  };
  const double d2 = wide.delta2;
  target.log_prior = [d2](const ParameterVector& th) {
    return gaussian_log_prior(th, d2);
  };
  return target;
}

LogisticPairKernel::LogisticPairKernel(LogisticModelPair pair, bool swap_models)
    : pair_(std::move(pair)), swapped_(swap_models) {
  pair_.validate();
  theta_ = ParameterVector::Zero(pair_.wide.covariates.cols());
}

double LogisticPairKernel::log_lik(int model, const ParameterVector& th) const {
  const bool narrow = swapped_ ? (model == 2) : (model == 1);
  if (narrow) {
    double ll = 0.0;
    const auto& x = pair_.wide.covariates;
    const Eigen::VectorXd s =
        x.leftCols(pair_.shared) * th.head(pair_.shared);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      ll += -pair_.wide.y[i] * s[i] - log1p_exp(-s[i]);
    }
    return ll;
  }
  return logistic_log_likelihood(pair_.wide, th);
}

double LogisticPairKernel::log_prior(const ParameterVector& th) const {
  return gaussian_log_prior(th, pair_.wide.delta2);
}

void LogisticPairKernel::initialize(RngStream& rng) {
  (void)rng;
  theta_ = ParameterVector::Zero(pair_.wide.covariates.cols());
  loglik1_ = log_lik(1, theta_);
  loglik2_ = log_lik(2, theta_);
  logprior_ = log_prior(theta_);
}

void LogisticPairKernel::step(double tau, RngStream& rng) {
  const Eigen::Index m = theta_.size();
  const Eigen::Index annealed = m - pair_.shared;
  // The differential block anneals with the exponent of the model that owns
  // it: tau on the forward path, 1 - tau when the endpoints are swapped.
  const double tau_eff = swapped_ ? 1.0 - tau : tau;
  const Eigen::VectorXd d = direct_path_proposal_scales(m, annealed, tau_eff);
  ParameterVector prop = theta_;
  for (Eigen::Index j = 0; j < m; ++j) {
    prop[j] += std::sqrt(d[j]) * rng.normal();
  }
  const double l1 = log_lik(1, prop);
  const double l2 = log_lik(2, prop);
  const double lp = log_prior(prop);
  const double log_a = tau * (l2 - loglik2_) + (1.0 - tau) * (l1 - loglik1_) +
                       (lp - logprior_);
  if (log_a >= 0.0 || std::log(rng.uniform_pos()) < log_a) {
    theta_ = prop;
    loglik1_ = l1;
    loglik2_ = l2;
    logprior_ = lp;
  }
}

double LogisticPairKernel::log_lik_ratio() const { return loglik2_ - loglik1_; }

LogisticSingleKernel::LogisticSingleKernel(LogisticModel model)
    : model_(std::move(model)) {
  model_.validate();
  theta_ = ParameterVector::Zero(model_.covariates.cols());
}

void LogisticSingleKernel::initialize(RngStream& rng) {
  (void)rng;
  theta_ = ParameterVector::Zero(model_.covariates.cols());
  loglik_ = logistic_log_likelihood(model_, theta_);
}

void LogisticSingleKernel::step(double tau, RngStream& rng) {
  const Eigen::Index m = theta_.size();
  const Eigen::VectorXd d = annealed_proposal_scales(m, tau);
  ParameterVector prop = theta_;
  for (Eigen::Index j = 0; j < m; ++j) {
    prop[j] += std::sqrt(d[j]) * rng.normal();
  }
  const double ll = logistic_log_likelihood(model_, prop);
  const double log_a = tau * (ll - loglik_) +
                       gaussian_log_prior(prop, model_.delta2) -
                       gaussian_log_prior(theta_, model_.delta2);
  if (log_a >= 0.0 || std::log(rng.uniform_pos()) < log_a) {
    theta_ = prop;
    loglik_ = ll;
  }
}

double LogisticSingleKernel::log_lik() const { return loglik_; }

}  // namespace evidencepath
