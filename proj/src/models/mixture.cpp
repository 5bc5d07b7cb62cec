#include "evidencepath/models/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "evidencepath/stats.hpp"

namespace evidencepath {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;

double norm_logpdf(double y, double mu, double var) {
  const double d = y - mu;
  return -0.5 * (kLog2Pi + std::log(var)) - 0.5 * d * d / var;
}
}  // namespace

void MixtureState::validate(Eigen::Index n) const {
  const int k = components();
  if (means.size() != k || vars.size() != k || alloc.size() != n) {
    throw std::invalid_argument("MixtureState: dimension mismatch");
  }
  if (std::abs(weights.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("MixtureState: weights must sum to 1");
  }
  if ((vars.array() <= 0.0).any()) {
    throw std::domain_error("MixtureState: coordinate 'vars' must be > 0");
  }
  if ((alloc.array() < 0).any() || (alloc.array() >= k).any()) {
    throw std::invalid_argument("MixtureState: allocation out of range");
  }
}

MixtureState init_mixture_state(const Eigen::VectorXd& y, int k) {
  if (k < 1) throw std::invalid_argument("init_mixture_state: k >= 1");
  MixtureState s;
  const Eigen::Index n = y.size();
  std::vector<double> sorted(y.data(), y.data() + n);
  std::sort(sorted.begin(), sorted.end());
  s.weights = Eigen::VectorXd::Constant(k, 1.0 / k);
  s.means.resize(k);
  for (int c = 0; c < k; ++c) {
    const auto idx = static_cast<std::size_t>(
        (c + 0.5) / k * static_cast<double>(n - 1));
    s.means[c] = sorted[idx];
  }
  const double mean = y.mean();
  const double var = (y.array() - mean).square().sum() / std::max<double>(1, n);
  s.vars = Eigen::VectorXd::Constant(k, std::max(var, 1e-6));
  s.alloc.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    int best = 0;
    for (int c = 1; c < k; ++c) {
      if (std::abs(y[i] - s.means[c]) < std::abs(y[i] - s.means[best])) best = c;
    }
    s.alloc[i] = best;
  }
  return s;
}

double mixture_log_likelihood(const MixtureState& state,
                              const Eigen::VectorXd& y) {
  state.validate(y.size());
  const int k = state.components();
  std::vector<double> terms(k);
  double ll = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    for (int c = 0; c < k; ++c) {
      terms[c] = std::log(state.weights[c]) +
                 norm_logpdf(y[i], state.means[c], state.vars[c]);
    }
    ll += log_sum_exp(terms);
  }
  return ll;
}

double mixture_cond_log_likelihood(const MixtureState& state,
                                   const Eigen::VectorXd& y) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const int c = state.alloc[i];
    ll += norm_logpdf(y[i], state.means[c], state.vars[c]);
  }
  return ll;
}

void mixture_tempered_sweep(MixtureState& state, const Eigen::VectorXd& y,
                            double t, const MixturePrior& prior,
                            RngStream& rng) {
  const int k = state.components();
  const Eigen::Index n = y.size();

  // allocations: P(z_i = c) ~ w_c * N(y_i | mu_c, s2_c)^t
  std::vector<double> logw(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int c = 0; c < k; ++c) {
      logw[c] = std::log(state.weights[c]) +
                t * norm_logpdf(y[i], state.means[c], state.vars[c]);
    }
    state.alloc[i] = rng.categorical_from_log(logw);
  }

  // sufficient statistics per component
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    counts[state.alloc[i]] += 1.0;
    sums[state.alloc[i]] += y[i];
  }

  // weights ~ Dirichlet(prior + counts); allocations carry the tempering
  double wsum = 0.0;
  for (int c = 0; c < k; ++c) {
    state.weights[c] = rng.gamma(prior.dirichlet + counts[c], 1.0);
    wsum += state.weights[c];
  }
  state.weights /= wsum;

  // means: precision t n_c / s2_c + 1 / mean_var
  for (int c = 0; c < k; ++c) {
    const double prec = t * counts[c] / state.vars[c] + 1.0 / prior.mean_var;
    const double mu = (t * sums[c] / state.vars[c]) / prec;
    state.means[c] = mu + std::sqrt(1.0 / prec) * rng.normal();
  }

  // precisions: Gamma(shape + t n_c / 2, rate + t SSE_c / 2)
  Eigen::VectorXd sse = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = state.alloc[i];
    const double d = y[i] - state.means[c];
    sse[c] += d * d;
  }
  for (int c = 0; c < k; ++c) {
    const double shape = prior.prec_shape + 0.5 * t * counts[c];
    const double rate = prior.prec_rate + 0.5 * t * sse[c];
    state.vars[c] = 1.0 / rng.gamma(shape, rate);
  }
}

void mixture_power_gibbs_step(MixtureState& model1, MixtureState& model2,
                              const Eigen::VectorXd& y, double tau,
                              const MixturePrior& prior, RngStream& rng) {
  mixture_tempered_sweep(model2, y, tau, prior, rng);
  mixture_tempered_sweep(model1, y, 1.0 - tau, prior, rng);
}

MixturePairKernel::MixturePairKernel(Eigen::VectorXd y, int k1, int k2,
                                     MixturePrior prior, bool swap_models)
    : y_(std::move(y)), k1_(k1), k2_(k2), prior_(prior) {
  if (swap_models) std::swap(k1_, k2_);
  if (k1_ < 1 || k2_ < 1) {
    throw std::invalid_argument("MixturePairKernel: component counts >= 1");
  }
}

void MixturePairKernel::initialize(RngStream& rng) {
  (void)rng;
  state1_ = init_mixture_state(y_, k1_);
  state2_ = init_mixture_state(y_, k2_);
}

void MixturePairKernel::step(double tau, RngStream& rng) {
  mixture_power_gibbs_step(state1_, state2_, y_, tau, prior_, rng);
}

double MixturePairKernel::log_lik_ratio() const {
  return mixture_cond_log_likelihood(state2_, y_) -
         mixture_cond_log_likelihood(state1_, y_);
}

MixtureSingleKernel::MixtureSingleKernel(Eigen::VectorXd y, int k,
                                         MixturePrior prior)
    : y_(std::move(y)), k_(k), prior_(prior) {}

void MixtureSingleKernel::initialize(RngStream& rng) {
  (void)rng;
  state_ = init_mixture_state(y_, k_);
}

void MixtureSingleKernel::step(double tau, RngStream& rng) {
  mixture_tempered_sweep(state_, y_, tau, prior_, rng);
}

double MixtureSingleKernel::log_lik() const {
  return mixture_cond_log_likelihood(state_, y_);
}

}  // namespace evidencepath
