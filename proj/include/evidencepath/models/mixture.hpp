#pragma once

#include <Eigen/Dense>

#include "evidencepath/core.hpp"
#include "evidencepath/estimators.hpp"
#include "evidencepath/rng.hpp"

namespace evidencepath {

/// Univariate Gaussian mixture with latent allocations. Priors follow the
/// benchmark setup: weights ~ Dirichlet(1,..,1), means ~ N(0, 1000),
/// precisions ~ Gamma(1, 1).
struct MixturePrior {
  double dirichlet = 1.0;
  double mean_var = 1000.0;
  double prec_shape = 1.0;
  double prec_rate = 1.0;
};

struct MixtureState {
  Eigen::VectorXi alloc;    // z_i in [0, K)
  Eigen::VectorXd weights;  // simplex
  Eigen::VectorXd means;
  Eigen::VectorXd vars;

  int components() const { return static_cast<int>(weights.size()); }
  void validate(Eigen::Index n) const;
};

/// Deterministic spread start: quantile means, overall variance, uniform
/// weights, nearest-mean allocations.
MixtureState init_mixture_state(const Eigen::VectorXd& y, int k);

/// Observed-data mixture log likelihood sum_i log sum_k w_k N(y_i|mu_k,s2_k).
double mixture_log_likelihood(const MixtureState& state,
                              const Eigen::VectorXd& y);

/// Log likelihood conditional on the allocations,
/// sum_i log N(y_i | mu_{z_i}, s2_{z_i}). With the allocations treated as
/// latent parameters this is the quantity the annealing path tempers.
double mixture_cond_log_likelihood(const MixtureState& state,
                                   const Eigen::VectorXd& y);

/// One tempered Gibbs sweep for a single mixture at likelihood exponent t:
/// allocations from w_k N(y_i|mu_k,s2_k)^t, then conjugate weight, mean and
/// precision updates. Empty components fall back to their prior conditionals.
void mixture_tempered_sweep(MixtureState& state, const Eigen::VectorXd& y,
                            double t, const MixturePrior& prior,
                            RngStream& rng);

/// Direct-path sweep for a model pair with disjoint parameter sets: model-2
/// blocks update under exponent tau, model-1 blocks under 1 - tau.
void mixture_power_gibbs_step(MixtureState& model1, MixtureState& model2,
                              const Eigen::VectorXd& y, double tau,
                              const MixturePrior& prior, RngStream& rng);

/// Pair kernel comparing K2-component (model 2, exponent tau) against
/// K1-component (model 1, exponent 1 - tau) mixtures. Each transition
/// refreshes both models' blocks, so one step costs two plain updates.
class MixturePairKernel : public PairKernel {
 public:
  MixturePairKernel(Eigen::VectorXd y, int k1, int k2,
                    MixturePrior prior = {}, bool swap_models = false);

  void initialize(RngStream& rng) override;
  void step(double tau, RngStream& rng) override;
  double log_lik_ratio() const override;
  int cost_per_step() const override { return 2; }

 private:
  Eigen::VectorXd y_;
  int k1_, k2_;
  MixturePrior prior_;
  MixtureState state1_, state2_;
};

/// Single-model power-posterior kernel for equilibrium TI on a mixture.
class MixtureSingleKernel : public SingleModelKernel {
 public:
  MixtureSingleKernel(Eigen::VectorXd y, int k, MixturePrior prior = {});

  void initialize(RngStream& rng) override;
  void step(double tau, RngStream& rng) override;
  double log_lik() const override;

 private:
  Eigen::VectorXd y_;
  int k_;
  MixturePrior prior_;
  MixtureState state_;
};

}  // namespace evidencepath
