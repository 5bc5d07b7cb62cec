#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "evidencepath/core.hpp"
#include "evidencepath/estimators.hpp"
#include "evidencepath/rng.hpp"

namespace evidencepath {

/// Transcriptional-regulation network: per-gene regulator sets with
/// activation/inhibition signs (1 activator, 0 inhibitor).
struct GeneNetwork {
  std::vector<std::string> genes;
  std::vector<std::vector<int>> regulators;
  std::vector<std::vector<int>> signs;

  int size() const { return static_cast<int>(genes.size()); }
  void validate() const;
};

/// Per-gene kinetic parameters: V = (degradation rate, max reaction rates),
/// K = Michaelis-Menten constants, plus noise and ridge hyper-variances.
struct KineticState {
  Eigen::VectorXd v;
  Eigen::VectorXd k;
  double sigma2 = 1.0;
  double delta2 = 1.0;
};

struct BpHyper {
  double a_sigma = 0.01;
  double b_sigma = 0.01;
  double a_delta = 0.01;
  double b_delta = 0.01;
  double nu = 1.0;             // truncated-normal prior variance for K
  double k_step_var = 0.1;     // MH proposal variance for K
};

/// Synthetic gradient-matching data: mRNA concentrations (genes x samples)
/// and per-gene gradient observations.
struct GradientData {
  Eigen::MatrixXd concentrations;
  Eigen::MatrixXd gradients;
  std::vector<std::string> genes;
  int n_timepoints = 0;
  int n_conditions = 0;
};

/// Design row (-x_i, [I x_u + (1-I) k] / (x_u + k) per regulator u) for one
/// time point.
Eigen::RowVectorXd mm_design_row(const GeneNetwork& network, int gene,
                                 const Eigen::VectorXd& concentrations,
                                 const Eigen::VectorXd& k_params);

/// dx_i/dt under Michaelis-Menten regulation: mm_design_row dot V.
double mm_gradient(const GeneNetwork& network, int gene,
                   const Eigen::VectorXd& concentrations,
                   const Eigen::VectorXd& v_params,
                   const Eigen::VectorXd& k_params);

/// Two candidate regulator sets for one response gene, padded on their
/// union. Column u of a model's design is zero when u is not one of its
/// regulators; the degradation column is shared.
struct BpModelPair {
  int gene = 0;
  std::vector<int> union_regs;
  std::vector<int> union_signs;
  std::vector<bool> in_model1;  // per union regulator
  std::vector<bool> in_model2;

  void validate() const;
};

/// Union pair from two regulator subsets of a network's wiring for `gene`.
BpModelPair make_bp_pair(const GeneNetwork& model1, const GeneNetwork& model2,
                         int gene);

/// Zero-padded design matrix for one side of the pair at the given K.
Eigen::MatrixXd bp_design(const BpModelPair& pair,
                          const Eigen::MatrixXd& concentrations,
                          const Eigen::VectorXd& k_params, int model);

/// One MCMC iteration of the direct-path sampler for a response gene:
/// (1) V from the truncated tempered Gaussian conditional, (2) sigma2 from
/// its tempered inverse gamma, (3) delta2 from its inverse gamma, (4) an MH
/// move on K with N(0, 0.1 I) perturbations and the tempered acceptance
/// ratio including the truncated-prior factor.
void bp_gibbs_sweep(const BpModelPair& pair, KineticState& state, double tau,
                    const Eigen::VectorXd& y,
                    const Eigen::MatrixXd& concentrations,
                    const BpHyper& hyper, RngStream& rng);

/// Simulate the network ODE with a fixed-step RK4 integrator from
/// condition-specific initial states, record concentrations every 2 hours
/// over 24 hours, and emit exact model gradients plus N(0, noise_sd^2)
/// observation noise. 11 conditions x 13 time points gives n = 143 samples.
GradientData bp_synthesize_data(const GeneNetwork& network,
                                const std::vector<Eigen::VectorXd>& true_v,
                                const std::vector<Eigen::VectorXd>& true_k,
                                int n_conditions, double noise_sd,
                                RngStream& rng, int n_timepoints = 13,
                                double horizon_hours = 24.0,
                                bool difference_quotient_gradients = false);

/// Wildtype and PRR9/PRR7-knockout variants of a compact five-gene clock
/// ring used by the synthetic study. The mutant drops PRR9->PRR7 and
/// PRR7->NI.
std::pair<GeneNetwork, GeneNetwork> clock_networks();

/// Direct-path kernel for one response gene.
class BpPairKernel : public PairKernel {
 public:
  BpPairKernel(BpModelPair pair, Eigen::VectorXd y,
               Eigen::MatrixXd concentrations, BpHyper hyper = {},
               bool swap_models = false);

  void initialize(RngStream& rng) override;
  void step(double tau, RngStream& rng) override;
  double log_lik_ratio() const override;

  const KineticState& state() const { return state_; }

 private:
  BpModelPair pair_;
  Eigen::VectorXd y_;
  Eigen::MatrixXd conc_;
  BpHyper hyper_;
  KineticState state_;
};

}  // namespace evidencepath
