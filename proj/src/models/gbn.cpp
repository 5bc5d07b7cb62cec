#include "evidencepath/models/gbn.hpp"

#include <cmath>
#include <stdexcept>

namespace evidencepath {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;

using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

void check_strictly_lower(const BoolMat& mask) {
  for (Eigen::Index i = 0; i < mask.rows(); ++i) {
    for (Eigen::Index j = i; j < mask.cols(); ++j) {
      if (mask(i, j)) {
        throw std::invalid_argument("GBN mask must be strictly lower triangular");
      }
    }
  }
}

}  // namespace

void GaussianBeliefNetwork::validate() const {
  const Eigen::Index m = size();
  if (cond_vars.size() != m || coeffs.rows() != m || coeffs.cols() != m ||
      mask.rows() != m || mask.cols() != m) {
    throw std::invalid_argument("GaussianBeliefNetwork: dimension mismatch");
  }
  if ((cond_vars.array() <= 0.0).any()) {
    throw std::domain_error("GaussianBeliefNetwork: cond_vars must be > 0");
  }
  check_strictly_lower(mask);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!mask(i, j) && coeffs(i, j) != 0.0) {
        throw std::invalid_argument(
            "GaussianBeliefNetwork: coefficient outside the edge mask");
      }
    }
  }
}

Eigen::MatrixXd gbn_precision(const GaussianBeliefNetwork& gbn) {
  const Eigen::Index m = gbn.size();
  if ((gbn.cond_vars.array() <= 0.0).any()) {
    throw std::domain_error("gbn_precision: cond_vars must be > 0");
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  w(0, 0) = 1.0 / gbn.cond_vars[0];
  for (Eigen::Index k = 1; k < m; ++k) {
    const Eigen::VectorXd beta = gbn.coeffs.row(k).head(k).transpose();
    const double inv_var = 1.0 / gbn.cond_vars[k];
    w.topLeftCorner(k, k) += inv_var * beta * beta.transpose();
    w.block(0, k, k, 1) = -inv_var * beta;
    w.block(k, 0, 1, k) = -inv_var * beta.transpose();
    w(k, k) = inv_var;
  }
  return w;
}

Eigen::MatrixXd gbn_submodel_coeffs(const Eigen::MatrixXd& union_coeffs,
                                    const BoolMat& submodel_mask,
                                    const BoolMat& union_mask) {
  if (submodel_mask.rows() != union_mask.rows() ||
      submodel_mask.cols() != union_mask.cols()) {
    throw std::invalid_argument("gbn_submodel_coeffs: mask shape mismatch");
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(union_coeffs.rows(),
                                              union_coeffs.cols());
  for (Eigen::Index i = 0; i < union_mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < union_mask.cols(); ++j) {
      if (submodel_mask(i, j)) {
        if (!union_mask(i, j)) {
          throw std::invalid_argument(
              "gbn_submodel_coeffs: submodel edge absent from the union");
        }
        out(i, j) = union_coeffs(i, j);
      }
    }
  }
  return out;
}

double gbn_log_likelihood(const GaussianBeliefNetwork& gbn,
                          const Eigen::MatrixXd& data) {
  gbn.validate();
  const Eigen::Index m = gbn.size();
  if (data.cols() != m) {
    throw std::invalid_argument("gbn_log_likelihood: data width mismatch");
  }
  double ll = 0.0;
  for (Eigen::Index w = 0; w < data.rows(); ++w) {
    const Eigen::VectorXd c = data.row(w).transpose() - gbn.mean;
    for (Eigen::Index i = 0; i < m; ++i) {
      double r = c[i];
      for (Eigen::Index j = 0; j < i; ++j) r -= gbn.coeffs(i, j) * c[j];
      ll += -0.5 * (kLog2Pi + std::log(gbn.cond_vars[i])) -
            0.5 * r * r / gbn.cond_vars[i];
    }
  }
  return ll;
}

Eigen::MatrixXd gbn_sample(const GaussianBeliefNetwork& gbn, int n,
                           RngStream& rng) {
  gbn.validate();
  const Eigen::Index m = gbn.size();
  Eigen::MatrixXd out(n, m);
  for (int w = 0; w < n; ++w) {
    for (Eigen::Index i = 0; i < m; ++i) {
      double mu = gbn.mean[i];
      for (Eigen::Index j = 0; j < i; ++j) {
        mu += gbn.coeffs(i, j) * (out(w, j) - gbn.mean[j]);
      }
      out(w, i) = mu + std::sqrt(gbn.cond_vars[i]) * rng.normal();
    }
  }
  return out;
}

double wishart_log_density_unnorm(const Eigen::MatrixXd& precision, double df) {
  const Eigen::Index m = precision.rows();
  const Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("wishart_log_density_unnorm: W not SPD");
  }
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    logdet += 2.0 * std::log(llt.matrixL()(i, i));
  }
  return 0.5 * (df - static_cast<double>(m) - 1.0) * logdet -
         0.5 * precision.trace();
}

void GbnModelPair::validate() const {
  check_strictly_lower(union_mask);
  check_strictly_lower(mask1);
  check_strictly_lower(mask2);
  const Eigen::Index m = mean.size();
  if (union_mask.rows() != m || data.cols() != m) {
    throw std::invalid_argument("GbnModelPair: dimension mismatch");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const bool in_union = mask1(i, j) || mask2(i, j);
      if (in_union != union_mask(i, j)) {
        throw std::invalid_argument(
            "GbnModelPair: union mask must equal mask1 | mask2");
      }
    }
  }
}

std::pair<BoolMat, BoolMat> arabidopsis_gbn_masks() {
  // Nodes: 0 LHY, 1 PRR9, 2 PRR7, 3 NI, 4 TOC1, 5 GI, 6 Y.
  const int m = 7;
  BoolMat wildtype = BoolMat::Constant(m, m, false);
  auto edge = [&](int from, int to) { wildtype(to, from) = true; };
  edge(0, 1);  // LHY -> PRR9
  edge(1, 2);  // PRR9 -> PRR7   (wildtype only)
  edge(2, 3);  // PRR7 -> NI     (wildtype only)
  edge(0, 4);  // LHY -> TOC1
  edge(3, 4);  // NI -> TOC1
  edge(4, 5);  // TOC1 -> GI
  edge(5, 6);  // GI -> Y
  BoolMat mutant = wildtype;
  mutant(2, 1) = false;
  mutant(3, 2) = false;
  return {wildtype, mutant};
}

GbnPairKernel::GbnPairKernel(GbnModelPair pair, double epsilon, bool swap_models)
    : pair_(std::move(pair)), epsilon_(epsilon), swapped_(swap_models) {
  pair_.validate();
  if (!(epsilon_ > 0.0)) {
    throw std::invalid_argument("GbnPairKernel: epsilon must be > 0");
  }
  const Eigen::Index m = pair_.mean.size();
  coeffs_ = Eigen::MatrixXd::Zero(m, m);
  log_vars_ = Eigen::VectorXd::Zero(m);
  gram_ = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index w = 0; w < pair_.data.rows(); ++w) {
    const Eigen::VectorXd c = pair_.data.row(w).transpose() - pair_.mean;
    gram_ += c * c.transpose();
  }
}

double GbnPairKernel::model_loglik(int model) const {
  const bool use_mask1 = swapped_ ? (model == 2) : (model == 1);
  const BoolMat& msk = use_mask1 ? pair_.mask1 : pair_.mask2;
  const Eigen::Index m = pair_.mean.size();
  const double n = static_cast<double>(pair_.data.rows());
  double ll = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double var = std::exp(log_vars_[i]);
    // Q_i = (e_i - b)' S (e_i - b) with b the masked regression row.
    double q = gram_(i, i);
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!msk(i, j)) continue;
      q -= 2.0 * coeffs_(i, j) * gram_(i, j);
      for (Eigen::Index k = 0; k < i; ++k) {
        if (msk(i, k)) q += coeffs_(i, j) * coeffs_(i, k) * gram_(j, k);
      }
    }
    ll += -0.5 * n * (kLog2Pi + log_vars_[i]) - 0.5 * q / var;
  }
  return ll;
}

void GbnPairKernel::refresh_cached() {
  loglik1_ = model_loglik(1);
  loglik2_ = model_loglik(2);
  GaussianBeliefNetwork u;
  u.mean = pair_.mean;
  u.cond_vars = log_vars_.array().exp();
  u.coeffs = coeffs_;
  u.mask = pair_.union_mask;
  logprior_ = wishart_log_density_unnorm(gbn_precision(u), pair_.wishart_df);
}

void GbnPairKernel::initialize(RngStream& rng) {
  (void)rng;
  coeffs_.setZero();
  log_vars_.setZero();
  refresh_cached();
}

void GbnPairKernel::step(double tau, RngStream& rng) {
  const Eigen::Index m = pair_.mean.size();
  const Eigen::MatrixXd old_coeffs = coeffs_;
  const Eigen::VectorXd old_log_vars = log_vars_;
  const double old_l1 = loglik1_, old_l2 = loglik2_, old_lp = logprior_;

  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (pair_.union_mask(i, j)) {
        coeffs_(i, j) += epsilon_ * (2.0 * rng.uniform() - 1.0);
      }
    }
    log_vars_[i] += epsilon_ * (2.0 * rng.uniform() - 1.0);
  }
  refresh_cached();
  const double log_a = tau * (loglik2_ - old_l2) +
                       (1.0 - tau) * (loglik1_ - old_l1) + (logprior_ - old_lp);
  if (!(log_a >= 0.0 || std::log(rng.uniform_pos()) < log_a)) {
    coeffs_ = old_coeffs;
    log_vars_ = old_log_vars;
    loglik1_ = old_l1;
    loglik2_ = old_l2;
    logprior_ = old_lp;
  }
}

double GbnPairKernel::log_lik_ratio() const { return loglik2_ - loglik1_; }

bool GbnPairKernel::mh_move(const GbnModelPair& pair,
                            Eigen::MatrixXd& union_coeffs,
                            Eigen::VectorXd& log_vars, double tau,
                            double epsilon, RngStream& rng, bool swap_models) {
  GbnPairKernel kernel(pair, epsilon, swap_models);
  kernel.coeffs_ = union_coeffs;
  kernel.log_vars_ = log_vars;
  kernel.refresh_cached();
  const Eigen::MatrixXd before_coeffs = kernel.coeffs_;
  const Eigen::VectorXd before_vars = kernel.log_vars_;
  kernel.step(tau, rng);
  const bool accepted = (kernel.coeffs_ != before_coeffs) ||
                        (kernel.log_vars_ != before_vars);
  union_coeffs = kernel.coeffs_;
  log_vars = kernel.log_vars_;
  return accepted;
}

}  // namespace evidencepath
