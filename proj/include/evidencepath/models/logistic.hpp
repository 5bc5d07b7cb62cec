#pragma once

#include <Eigen/Dense>

#include "evidencepath/core.hpp"
#include "evidencepath/estimators.hpp"
#include "evidencepath/rng.hpp"

namespace evidencepath {

/// Logistic regression with a leading intercept column and Gaussian prior
/// N(0, delta2 I) on the coefficients. The likelihood convention follows
/// the power-posterior benchmark literature:
///   p(y_i | theta) = exp(-x_i'theta)^{y_i} / (1 + exp(-x_i'theta)).
struct LogisticModel {
  Eigen::MatrixXd covariates;  // n x m, first column all ones
  Eigen::VectorXd y;           // entries in {0,1}
  double delta2 = 100.0;

  void validate() const;
};

/// sum_i [ -y_i x_i'theta - log(1 + exp(-x_i'theta)) ], overflow safe.
double logistic_log_likelihood(const LogisticModel& model,
                               const ParameterVector& theta);

/// Nested pair sharing the first `shared` columns of the wide model; the
/// trailing columns belong to model 2 only. The union layout is simply the
/// wide coefficient vector; model 1 ignores the tail.
struct LogisticModelPair {
  LogisticModel wide;       // model 2
  Eigen::Index shared = 0;  // model 1 uses columns [0, shared)

  void validate() const;
};

TemperedTarget make_logistic_target(const LogisticModelPair& pair);

/// Joint random-walk Metropolis kernel on the tempered two-model posterior.
/// Proposal is N(0, diag(d)) with the direct-path scale rule: shared
/// coordinates at 0.01, annealed coordinates at min(0.01/tau, 100).
class LogisticPairKernel : public PairKernel {
 public:
  explicit LogisticPairKernel(LogisticModelPair pair, bool swap_models = false);

  void initialize(RngStream& rng) override;
  void step(double tau, RngStream& rng) override;
  double log_lik_ratio() const override;

  const ParameterVector& theta() const { return theta_; }

 private:
  double log_lik(int model, const ParameterVector& th) const;
  double log_prior(const ParameterVector& th) const;

  LogisticModelPair pair_;
  bool swapped_;
  ParameterVector theta_;
  double loglik1_ = 0.0, loglik2_ = 0.0, logprior_ = 0.0;
};

/// Single-model power-posterior random walk; every coordinate anneals.
class LogisticSingleKernel : public SingleModelKernel {
 public:
  explicit LogisticSingleKernel(LogisticModel model);

  void initialize(RngStream& rng) override;
  void step(double tau, RngStream& rng) override;
  double log_lik() const override;

 private:
  LogisticModel model_;
  ParameterVector theta_;
  double loglik_ = 0.0;
};

}  // namespace evidencepath
