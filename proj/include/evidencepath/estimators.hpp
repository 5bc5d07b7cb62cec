#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "evidencepath/core.hpp"
#include "evidencepath/ladders.hpp"
#include "evidencepath/rng.hpp"

namespace evidencepath {

/// Per-rung summary of an equilibrium power-posterior run.
struct EquilibriumRungSummary {
  double tau = 0.0;
  double mean_loglik = 0.0;
  double var_loglik = 0.0;
  std::int64_t n_samples = 0;
};

/// Plain trapezoid over rung means. Rungs must be sorted with tau from 0 to 1.
double trapezoid_integral(std::span<const EquilibriumRungSummary> rungs);

/// Trapezoid minus the variance correction
/// sum_k (dtau_k^2 / 12)(V_k - V_{k-1}).
double corrected_trapezoid_integral(
    std::span<const EquilibriumRungSummary> rungs);

/// Trapezoid over the recorded trace points; phi is the log-likelihood ratio
/// for direct-path sweeps, or the log likelihood for single-model sweeps.
double neti_path_integral(const Trace& trace);

/// Path-variance estimate sum_n (phi_n - phi_{n-1})(tau_n - tau_{n-1}).
/// Can come out negative on noisy traces; returned unmodified.
double estimator_variance(const Trace& trace);

/// One Markov kernel targeting the tempered two-model posterior. step()
/// advances the chain one transition at the given inverse temperature;
/// log_lik_ratio() evaluates phi at the current state. cost_per_step()
/// reports how many plain MCMC updates one transition costs (2 for kernels
/// that refresh both models' parameter blocks, e.g. disjoint mixtures).
class PairKernel {
 public:
  virtual ~PairKernel() = default;
  virtual void initialize(RngStream& rng) = 0;
  virtual void step(double tau, RngStream& rng) = 0;
  virtual double log_lik_ratio() const = 0;
  virtual int cost_per_step() const { return 1; }
};

/// Single-model power-posterior kernel for equilibrium TI and NETI.
class SingleModelKernel {
 public:
  virtual ~SingleModelKernel() = default;
  virtual void initialize(RngStream& rng) = 0;
  virtual void step(double tau, RngStream& rng) = 0;
  virtual double log_lik() const = 0;
};

struct RunConfig {
  Method method = Method::NETI_DIFF;
  std::int64_t n_iter = 0;
  LadderConfig ladder;              // kind/alpha; count = K for TI
  std::int64_t neti_burn_in = 1000; // steps at tau = 0
  double ti_burn_in_frac = 0.20;    // per rung
  double pilot_frac = 0.10;         // TI-optimal pilot share of a rung budget
  std::uint64_t seed = 0;
  int repeats = 1;
};

/// Equilibrium TI estimate of one model's log marginal likelihood. The chain
/// visits the rungs in order, warm-starting each from the last; the per-rung
/// budget is n_iter/K with the remainder on the tau = 1 rung; the first 20%
/// of each rung is discarded. TI_OPTIMAL spends pilot_frac of each rung
/// budget on a pilot pass over the power-law ladder, replaces interior rungs
/// via optimal_insert, and applies the corrected trapezoid rule.
EvidenceEstimate run_equilibrium_ti(
    SingleModelKernel& kernel, const RunConfig& config, RngStream& rng,
    std::vector<EquilibriumRungSummary>* rungs_out = nullptr);

/// Equilibrium-TI log Bayes factor: two independent marginal-likelihood
/// runs, model 2 minus model 1.
EvidenceEstimate run_equilibrium_ti_bf(SingleModelKernel& kernel1,
                                       SingleModelKernel& kernel2,
                                       const RunConfig& config,
                                       RngStream& rng);

struct NetiDiffResult {
  EvidenceEstimate estimate;
  Trace trace;
};

/// Direct-path non-equilibrium sweep: 1000 burn-in steps at tau = 0, then
/// one transition per ladder rung with phi recorded after each. Power
/// ladders already span [0,1]; sigmoid ladders get the post-burn-in state
/// recorded at tau = 0 and the final state carried to tau = 1, so the
/// integral always covers the full interval. Kernels whose transitions cost
/// two plain updates receive n_iter/2 rungs.
NetiDiffResult run_neti_diff(PairKernel& kernel, const RunConfig& config,
                             RngStream& rng);

/// Single-model non-equilibrium sweep (phi = log likelihood); estimates the
/// log marginal likelihood.
NetiDiffResult run_neti(SingleModelKernel& kernel, const RunConfig& config,
                        RngStream& rng);

/// log p(D|M) from posterior draws via the inverse-moment identity
/// p(D|M) = <exp(-log lik)>^-1, evaluated with a max shift. High variance by
/// construction; a foil, not a production estimator.
double jarzynski_log_marginal(std::span<const double> posterior_logliks);

/// log BF from model-1 posterior draws via <exp(-d log unnorm posterior)>,
/// where each entry is (logL2 + log prior2) - (logL1 + log prior1) at a draw.
double jarzynski_log_bayes_factor(
    std::span<const double> delta_log_unnorm_posterior);

/// Posterior model probabilities from log Bayes factors against a common
/// reference model and prior model probabilities; computed in log space.
std::vector<double> model_posteriors_from_bfs(
    std::span<const double> log_bf_to_reference,
    std::span<const double> priors);

}  // namespace evidencepath
