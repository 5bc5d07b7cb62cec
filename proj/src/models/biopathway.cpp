#include "evidencepath/models/biopathway.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "evidencepath/samplers.hpp"

namespace evidencepath {

void GeneNetwork::validate() const {
  const int m = size();
  if (static_cast<int>(regulators.size()) != m ||
      static_cast<int>(signs.size()) != m) {
    throw std::invalid_argument("GeneNetwork: per-gene lists required");
  }
  for (int i = 0; i < m; ++i) {
    if (regulators[i].size() != signs[i].size()) {
      throw std::invalid_argument("GeneNetwork: one sign per edge");
    }
    for (int u : regulators[i]) {
      if (u < 0 || u >= m) {
        throw std::invalid_argument("GeneNetwork: regulator index out of range");
      }
    }
    for (int s : signs[i]) {
      if (s != 0 && s != 1) {
        throw std::invalid_argument("GeneNetwork: signs are 0 or 1");
      }
    }
  }
}

Eigen::RowVectorXd mm_design_row(const GeneNetwork& network, int gene,
                                 const Eigen::VectorXd& concentrations,
                                 const Eigen::VectorXd& k_params) {
  const auto& regs = network.regulators[gene];
  const auto& sgn = network.signs[gene];
  if (k_params.size() != static_cast<Eigen::Index>(regs.size())) {
    throw std::invalid_argument("mm_design_row: one k per regulator");
  }
  if ((k_params.array() < 0.0).any()) {
    throw std::domain_error("mm_design_row: coordinate 'k' must be >= 0");
  }
  Eigen::RowVectorXd row(1 + regs.size());
  row[0] = -concentrations[gene];
  for (std::size_t u = 0; u < regs.size(); ++u) {
    const double x = concentrations[regs[u]];
    const double k = k_params[static_cast<Eigen::Index>(u)];
    if (x + k == 0.0) {
      throw std::domain_error("mm_design_row: x + k = 0 for regulator '" +
                              network.genes[regs[u]] + "'");
    }
    row[static_cast<Eigen::Index>(u) + 1] =
        (sgn[u] == 1 ? x : k) / (x + k);
  }
  return row;
}

double mm_gradient(const GeneNetwork& network, int gene,
                   const Eigen::VectorXd& concentrations,
                   const Eigen::VectorXd& v_params,
                   const Eigen::VectorXd& k_params) {
  const Eigen::RowVectorXd row =
      mm_design_row(network, gene, concentrations, k_params);
  if (v_params.size() != row.size()) {
    throw std::invalid_argument("mm_gradient: V dimension mismatch");
  }
  return row.dot(v_params);
}

void BpModelPair::validate() const {
  const std::size_t s = union_regs.size();
  if (union_signs.size() != s || in_model1.size() != s ||
      in_model2.size() != s) {
    throw std::invalid_argument("BpModelPair: union bookkeeping mismatch");
  }
  for (std::size_t u = 0; u < s; ++u) {
    if (!in_model1[u] && !in_model2[u]) {
      throw std::invalid_argument("BpModelPair: regulator in neither model");
    }
  }
}

BpModelPair make_bp_pair(const GeneNetwork& model1, const GeneNetwork& model2,
                         int gene) {
  model1.validate();
  model2.validate();
  BpModelPair pair;
  pair.gene = gene;
  auto add = [&](const GeneNetwork& net, bool first) {
    const auto& regs = net.regulators[gene];
    const auto& sgn = net.signs[gene];
    for (std::size_t u = 0; u < regs.size(); ++u) {
      auto it = std::find(pair.union_regs.begin(), pair.union_regs.end(),
                          regs[u]);
      std::size_t pos;
      if (it == pair.union_regs.end()) {
        pair.union_regs.push_back(regs[u]);
        pair.union_signs.push_back(sgn[u]);
        pair.in_model1.push_back(false);
        pair.in_model2.push_back(false);
        pos = pair.union_regs.size() - 1;
      } else {
        pos = static_cast<std::size_t>(it - pair.union_regs.begin());
        if (pair.union_signs[pos] != sgn[u]) {
          throw std::invalid_argument(
              "make_bp_pair: models disagree on a regulator sign");
        }
      }
      (first ? pair.in_model1 : pair.in_model2)[pos] = true;
    }
  };
  add(model1, true);
  add(model2, false);
  pair.validate();
  return pair;
}

Eigen::MatrixXd bp_design(const BpModelPair& pair,
                          const Eigen::MatrixXd& concentrations,
                          const Eigen::VectorXd& k_params, int model) {
  if (model != 1 && model != 2) {
    throw std::invalid_argument("bp_design: model is 1 or 2");
  }
  const std::size_t s = pair.union_regs.size();
  if (k_params.size() != static_cast<Eigen::Index>(s)) {
    throw std::invalid_argument("bp_design: one k per union regulator");
  }
  const Eigen::Index n = concentrations.cols();
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(n, 1 + s);
  const auto& members = model == 1 ? pair.in_model1 : pair.in_model2;
  for (Eigen::Index t = 0; t < n; ++t) {
    design(t, 0) = -concentrations(pair.gene, t);
    for (std::size_t u = 0; u < s; ++u) {
      if (!members[u]) continue;  // padded column stays zero
      const double x = concentrations(pair.union_regs[u], t);
      const double k = k_params[static_cast<Eigen::Index>(u)];
      if (x + k == 0.0) {
        throw std::domain_error("bp_design: x + k = 0 for a regulator");
      }
      design(t, static_cast<Eigen::Index>(u) + 1) =
          (pair.union_signs[u] == 1 ? x : k) / (x + k);
    }
  }
  return design;
}

namespace {

double truncnorm_prior_logratio(const Eigen::VectorXd& k_new,
                                const Eigen::VectorXd& k_old, double nu) {
  // both states share the truncation normaliser, which therefore cancels
  const double q_new = (k_new.array() - 1.0).square().sum();
  const double q_old = (k_old.array() - 1.0).square().sum();
  return -0.5 * (q_new - q_old) / nu;
}

}  // namespace

void bp_gibbs_sweep(const BpModelPair& pair, KineticState& state, double tau,
                    const Eigen::VectorXd& y,
                    const Eigen::MatrixXd& concentrations,
                    const BpHyper& hyper, RngStream& rng) {
  pair.validate();
  const Eigen::Index p = static_cast<Eigen::Index>(pair.union_regs.size()) + 1;
  const double n = static_cast<double>(y.size());

  Eigen::MatrixXd d1 = bp_design(pair, concentrations, state.k, 1);
  Eigen::MatrixXd d2 = bp_design(pair, concentrations, state.k, 2);

  // (1) V | rest from the truncated tempered Gaussian conditional
  Eigen::MatrixXd inner = tau * d2.transpose() * d2 +
                          (1.0 - tau) * d1.transpose() * d1;
  inner.diagonal().array() += 1.0 / state.delta2;
  const Eigen::VectorXd rhs =
      Eigen::VectorXd::Constant(p, 1.0 / state.delta2) +
      (tau * d2 + (1.0 - tau) * d1).transpose() * y;
  const Eigen::LLT<Eigen::MatrixXd> llt(inner);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("bp_gibbs_sweep: conditional precision not SPD");
  }
  const Eigen::VectorXd mean = llt.solve(rhs);
  const Eigen::MatrixXd cov =
      state.sigma2 * llt.solve(Eigen::MatrixXd::Identity(p, p));
  state.v = sample_truncated_normal(mean, cov, rng);

  // (2) sigma2 | rest
  const double r1 = (y - d1 * state.v).squaredNorm();
  const double r2 = (y - d2 * state.v).squaredNorm();
  const double vq = (state.v.array() - 1.0).square().sum();
  const double a_s = hyper.a_sigma + 0.5 * (n + static_cast<double>(p));
  const double b_s = hyper.b_sigma +
                     0.5 * (tau * r2 + (1.0 - tau) * r1 + vq / state.delta2);
  state.sigma2 = 1.0 / rng.gamma(a_s, b_s);

  // (3) delta2 | rest
  const double a_d = hyper.a_delta + 0.5 * static_cast<double>(p);
  const double b_d = hyper.b_delta + 0.5 * vq / state.sigma2;
  state.delta2 = 1.0 / rng.gamma(a_d, b_d);

  // (4) MH move on K
  Eigen::VectorXd k_prop = state.k;
  for (Eigen::Index u = 0; u < k_prop.size(); ++u) {
    k_prop[u] += std::sqrt(hyper.k_step_var) * rng.normal();
  }
  if ((k_prop.array() >= 0.0).all()) {
    const Eigen::MatrixXd d1p = bp_design(pair, concentrations, k_prop, 1);
    const Eigen::MatrixXd d2p = bp_design(pair, concentrations, k_prop, 2);
    const double r1p = (y - d1p * state.v).squaredNorm();
    const double r2p = (y - d2p * state.v).squaredNorm();
    const double log_r =
        -0.5 * tau * (r2p - r2) / state.sigma2 -
        0.5 * (1.0 - tau) * (r1p - r1) / state.sigma2 +
        truncnorm_prior_logratio(k_prop, state.k, hyper.nu);
    if (log_r >= 0.0 || std::log(rng.uniform_pos()) < log_r) {
      state.k = k_prop;
    }
  }
}

GradientData bp_synthesize_data(const GeneNetwork& network,
                                const std::vector<Eigen::VectorXd>& true_v,
                                const std::vector<Eigen::VectorXd>& true_k,
                                int n_conditions, double noise_sd,
                                RngStream& rng, int n_timepoints,
                                double horizon_hours,
                                bool difference_quotient_gradients) {
  network.validate();
  const int m = network.size();
  if (static_cast<int>(true_v.size()) != m ||
      static_cast<int>(true_k.size()) != m) {
    throw std::invalid_argument("bp_synthesize_data: per-gene kinetics");
  }

  auto field = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd dx(m);
    for (int g = 0; g < m; ++g) {
      dx[g] = mm_gradient(network, g, x, true_v[g], true_k[g]);
    }
    return dx;
  };
  auto rk4 = [&](Eigen::VectorXd x, double dt) {
    const Eigen::VectorXd k1 = field(x);
    const Eigen::VectorXd k2 = field(x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = field(x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = field(x + dt * k3);
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return x;
  };

  const int samples = n_timepoints * n_conditions;
  GradientData data;
  data.genes = network.genes;
  data.n_timepoints = n_timepoints;
  data.n_conditions = n_conditions;
  data.concentrations.resize(m, samples);
  data.gradients.resize(m, samples);

  const double record_every =
      horizon_hours / static_cast<double>(n_timepoints - 1);
  int col = 0;
  for (int c = 0; c < n_conditions; ++c) {
    Eigen::VectorXd x(m);
    for (int g = 0; g < m; ++g) x[g] = 0.25 + 1.5 * rng.uniform();
    double t = 0.0;
    for (int s = 0; s < n_timepoints; ++s) {
      data.concentrations.col(col) = x;
      data.gradients.col(col) = field(x);
      ++col;
      if (s + 1 == n_timepoints) break;
      const double t_next = t + record_every;
      double dt = 0.01;
      while (t < t_next - 1e-12) {
        const double h = std::min(dt, t_next - t);
        Eigen::VectorXd x_new = rk4(x, h);
        int halvings = 0;
        while ((x_new.array() < 0.0).any()) {
          if (++halvings > 40) {
            throw std::domain_error(
                "bp_synthesize_data: concentration went negative");
          }
          x_new = rk4(x, h / std::pow(2.0, halvings));
        }
        if (halvings > 0) {
          t += h / std::pow(2.0, halvings);
        } else {
          t += h;
        }
        x = x_new;
      }
    }
  }

  if (difference_quotient_gradients) {
    // centred quotients inside each condition, one-sided at the ends
    for (int c = 0; c < n_conditions; ++c) {
      const int base = c * n_timepoints;
      for (int g = 0; g < m; ++g) {
        Eigen::VectorXd dq(n_timepoints);
        for (int s = 0; s < n_timepoints; ++s) {
          const int lo = std::max(0, s - 1), hi = std::min(n_timepoints - 1, s + 1);
          dq[s] = (data.concentrations(g, base + hi) -
                   data.concentrations(g, base + lo)) /
                  (record_every * (hi - lo));
        }
        for (int s = 0; s < n_timepoints; ++s) data.gradients(g, base + s) = dq[s];
      }
    }
  }

  for (int g = 0; g < m; ++g) {
    for (int s = 0; s < samples; ++s) {
      data.gradients(g, s) += noise_sd * rng.normal();
    }
  }
  return data;
}

std::pair<GeneNetwork, GeneNetwork> clock_networks() {
  GeneNetwork wildtype;
  wildtype.genes = {"LHY", "PRR9", "PRR7", "NI", "TOC1"};
  wildtype.regulators = {{4}, {0}, {1}, {2}, {3}};
  wildtype.signs = {{0}, {1}, {1}, {1}, {1}};
  GeneNetwork mutant = wildtype;
  mutant.regulators[2] = {};  // PRR7 loses PRR9
  mutant.signs[2] = {};
  mutant.regulators[3] = {};  // NI loses PRR7
  mutant.signs[3] = {};
  wildtype.validate();
  mutant.validate();
  return {wildtype, mutant};
}

BpPairKernel::BpPairKernel(BpModelPair pair, Eigen::VectorXd y,
                           Eigen::MatrixXd concentrations, BpHyper hyper,
                           bool swap_models)
    : pair_(std::move(pair)),
      y_(std::move(y)),
      conc_(std::move(concentrations)),
      hyper_(hyper) {
  if (swap_models) std::swap(pair_.in_model1, pair_.in_model2);
  pair_.validate();
}

void BpPairKernel::initialize(RngStream& rng) {
  (void)rng;
  const Eigen::Index p = static_cast<Eigen::Index>(pair_.union_regs.size()) + 1;
  state_.v = Eigen::VectorXd::Ones(p);
  state_.k = Eigen::VectorXd::Ones(p - 1);
  state_.sigma2 = 1.0;
  state_.delta2 = 1.0;
}

void BpPairKernel::step(double tau, RngStream& rng) {
  bp_gibbs_sweep(pair_, state_, tau, y_, conc_, hyper_, rng);
}

double BpPairKernel::log_lik_ratio() const {
  const Eigen::MatrixXd d1 = bp_design(pair_, conc_, state_.k, 1);
  const Eigen::MatrixXd d2 = bp_design(pair_, conc_, state_.k, 2);
  const double r1 = (y_ - d1 * state_.v).squaredNorm();
  const double r2 = (y_ - d2 * state_.v).squaredNorm();
  return 0.5 * (r1 - r2) / state_.sigma2;
}

}  // namespace evidencepath
