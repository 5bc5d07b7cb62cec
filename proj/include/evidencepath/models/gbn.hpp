#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "evidencepath/core.hpp"
#include "evidencepath/estimators.hpp"
#include "evidencepath/rng.hpp"

namespace evidencepath {

/// Gaussian belief network: x_i | x_1..x_{i-1} ~ N(m_i + sum_j B(i,j)(x_j -
/// m_j), sigma2_i) with B strictly lower triangular. Every multivariate
/// Gaussian factorises this way, and the zero pattern of B mirrors the zero
/// pattern of the precision matrix, which is what makes the representation
/// convenient for graphical-model comparison.
struct GaussianBeliefNetwork {
  Eigen::VectorXd mean;
  Eigen::VectorXd cond_vars;
  Eigen::MatrixXd coeffs;            // B(i,j) = beta_{j->i}, j < i
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;  // allowed edges

  Eigen::Index size() const { return mean.size(); }
  void validate() const;
};

/// Precision matrix from the conditional-variance/coefficient recursion:
/// W(1) = 1/sigma2_1, then each added node contributes its regression row.
Eigen::MatrixXd gbn_precision(const GaussianBeliefNetwork& gbn);

/// Copy union coefficients onto a submodel edge pattern; entries outside the
/// submodel mask are zero, shared edges share values exactly.
Eigen::MatrixXd gbn_submodel_coeffs(
    const Eigen::MatrixXd& union_coeffs,
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& submodel_mask,
    const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& union_mask);

/// Joint log density of the data under the belief-network factorisation
/// (equals the multivariate normal log density with precision
/// gbn_precision).
double gbn_log_likelihood(const GaussianBeliefNetwork& gbn,
                          const Eigen::MatrixXd& data);

/// Ancestral draws; one sample per row.
Eigen::MatrixXd gbn_sample(const GaussianBeliefNetwork& gbn, int n,
                           RngStream& rng);

/// Wishart(df, identity scale) log density of W up to its normalising
/// constant: ((df - M - 1)/2) log det W - tr(W)/2.
double wishart_log_density_unnorm(const Eigen::MatrixXd& precision, double df);

/// Two graphical models over shared data: union edge mask plus each model's
/// sub-mask. Shared edges carry equal coefficients by construction.
struct GbnModelPair {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> union_mask;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask1;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask2;
  Eigen::VectorXd mean;
  Eigen::MatrixXd data;  // n x M
  double wishart_df = 10.0;

  void validate() const;
};

/// The seven-node circadian-clock study pair: the wildtype graph carries two
/// extra edges (PRR9->PRR7 and PRR7->NI) on top of the mutant graph.
/// Returns (wildtype mask, mutant mask).
std::pair<Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>,
          Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>>
arabidopsis_gbn_masks();

/// Random-walk MH kernel in the space of free union coefficients and log
/// conditional variances; uniform [-eps, eps] perturbations, accepted
/// through the tempered likelihood ratio times the Wishart prior on the
/// union precision.
class GbnPairKernel : public PairKernel {
 public:
  GbnPairKernel(GbnModelPair pair, double epsilon = 0.1,
                bool swap_models = false);

  void initialize(RngStream& rng) override;
  void step(double tau, RngStream& rng) override;
  double log_lik_ratio() const override;

  /// One MH move on an explicit state; exposed for the spec-level operation.
  static bool mh_move(const GbnModelPair& pair, Eigen::MatrixXd& union_coeffs,
                      Eigen::VectorXd& log_vars, double tau, double epsilon,
                      RngStream& rng, bool swap_models = false);

 private:
  void refresh_cached();
  double model_loglik(int model) const;

  GbnModelPair pair_;
  double epsilon_;
  bool swapped_;
  Eigen::MatrixXd coeffs_;
  Eigen::VectorXd log_vars_;
  double loglik1_ = 0.0, loglik2_ = 0.0, logprior_ = 0.0;
  Eigen::MatrixXd gram_;  // sum_w (x_w - m)(x_w - m)'
};

}  // namespace evidencepath
