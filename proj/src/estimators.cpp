#include "evidencepath/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "evidencepath/stats.hpp"

namespace evidencepath {

namespace {

void check_rungs(std::span<const EquilibriumRungSummary> rungs) {
  if (rungs.size() < 2) {
    throw std::invalid_argument("trapezoid: need at least two rungs");
  }
  if (rungs.front().tau != 0.0 || rungs.back().tau != 1.0) {
    throw std::invalid_argument("trapezoid: rungs must span tau = 0 to 1");
  }
  for (std::size_t k = 1; k < rungs.size(); ++k) {
    if (!(rungs[k].tau > rungs[k - 1].tau)) {
      throw std::invalid_argument("trapezoid: taus must be strictly increasing");
    }
  }
}

}  // namespace

double trapezoid_integral(std::span<const EquilibriumRungSummary> rungs) {
  check_rungs(rungs);
  double sum = 0.0;
  for (std::size_t k = 1; k < rungs.size(); ++k) {
    sum += 0.5 * (rungs[k].tau - rungs[k - 1].tau) *
           (rungs[k].mean_loglik + rungs[k - 1].mean_loglik);
  }
  return sum;
}

double corrected_trapezoid_integral(
    std::span<const EquilibriumRungSummary> rungs) {
  check_rungs(rungs);
  double sum = trapezoid_integral(rungs);
  for (std::size_t k = 1; k < rungs.size(); ++k) {
    const double dt = rungs[k].tau - rungs[k - 1].tau;
    sum -= dt * dt / 12.0 * (rungs[k].var_loglik - rungs[k - 1].var_loglik);
  }
  return sum;
}

double neti_path_integral(const Trace& trace) {
  if (trace.size() < 2) {
    throw std::invalid_argument("neti_path_integral: degenerate trace");
  }
  trace.validate();
  const auto& p = trace.points;
  double sum = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    sum += 0.5 * (p[k].tau - p[k - 1].tau) * (p[k].phi + p[k - 1].phi);
  }
  return sum;
}

double estimator_variance(const Trace& trace) {
  const auto& p = trace.points;
  double sum = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) {
    sum += (p[k].phi - p[k - 1].phi) * (p[k].tau - p[k - 1].tau);
  }
  return sum;
}

namespace {

struct RungStats {
  double mean = 0.0;
  double var = 0.0;
  std::int64_t n = 0;
};

// One equilibrium stay at a rung: burn then accumulate loglik moments.
RungStats run_rung(SingleModelKernel& kernel, double tau, std::int64_t budget,
                   double burn_frac, RngStream& rng) {
  const std::int64_t burn = static_cast<std::int64_t>(
      std::floor(burn_frac * static_cast<double>(budget)));
  for (std::int64_t i = 0; i < burn; ++i) kernel.step(tau, rng);
  double s1 = 0.0, s2 = 0.0;
  const std::int64_t kept = budget - burn;
  for (std::int64_t i = 0; i < kept; ++i) {
    kernel.step(tau, rng);
    const double l = kernel.log_lik();
    s1 += l;
    s2 += l * l;
  }
  RungStats st;
  st.n = kept;
  st.mean = s1 / static_cast<double>(kept);
  st.var = std::max(0.0, s2 / static_cast<double>(kept) - st.mean * st.mean);
  return st;
}

std::vector<std::int64_t> rung_budgets(std::int64_t n_iter, std::int64_t k) {
  std::vector<std::int64_t> budget(static_cast<std::size_t>(k), n_iter / k);
  budget.back() += n_iter % k;  // remainder goes to the tau = 1 rung
  return budget;
}

}  // namespace

EvidenceEstimate run_equilibrium_ti(SingleModelKernel& kernel,
                                    const RunConfig& config, RngStream& rng,
                                    std::vector<EquilibriumRungSummary>* rungs_out) {
  if (config.method != Method::TI_STANDARD &&
      config.method != Method::TI_OPTIMAL) {
    throw std::invalid_argument("run_equilibrium_ti: method must be TI");
  }
  const std::int64_t k_rungs = config.ladder.count;
  if (k_rungs < 2) throw std::invalid_argument("run_equilibrium_ti: K >= 2");
  const std::int64_t per_rung = config.n_iter / k_rungs;
  const std::int64_t usable = per_rung - static_cast<std::int64_t>(std::floor(
                                             config.ti_burn_in_frac *
                                             static_cast<double>(per_rung)));
  if (usable < 10) {
    throw std::invalid_argument(
        "run_equilibrium_ti: fewer than 10 usable draws per rung; raise "
        "n_iter or lower K");
  }

  LadderConfig lc = config.ladder;
  lc.kind = LadderKind::POWER;
  std::vector<double> taus = power_law_ladder(lc).taus;

  kernel.initialize(rng);
  const bool optimal = config.method == Method::TI_OPTIMAL;
  double pilot_spent_frac = 0.0;
  if (optimal) {
    // Pilot pass over the power-law rungs feeds the insertion rule.
    pilot_spent_frac = config.pilot_frac;
    std::vector<double> f(taus.size()), v(taus.size());
    for (std::size_t k = 0; k < taus.size(); ++k) {
      const std::int64_t pilot_budget = std::max<std::int64_t>(
          10, static_cast<std::int64_t>(config.pilot_frac *
                                        static_cast<double>(per_rung)));
      const RungStats st =
          run_rung(kernel, taus[k], pilot_budget, config.ti_burn_in_frac, rng);
      f[k] = st.mean;
      v[k] = st.var;
    }
    taus = refine_ladder_with_estimates(taus, f, v);
    kernel.initialize(rng);
  }

  std::vector<EquilibriumRungSummary> rungs(taus.size());
  const std::vector<std::int64_t> budgets = rung_budgets(
      static_cast<std::int64_t>(std::llround(
          static_cast<double>(config.n_iter) * (1.0 - pilot_spent_frac))),
      k_rungs);
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const RungStats st =
        run_rung(kernel, taus[k], budgets[k], config.ti_burn_in_frac, rng);
    rungs[k] = {taus[k], st.mean, st.var, st.n};
  }
  if (rungs_out) *rungs_out = rungs;

  const double value = optimal ? corrected_trapezoid_integral(rungs)
                               : trapezoid_integral(rungs);
  return make_estimate(value, 0.0, config.n_iter, rng.master_seed(),
                       config.method);
}

EvidenceEstimate run_equilibrium_ti_bf(SingleModelKernel& kernel1,
                                       SingleModelKernel& kernel2,
                                       const RunConfig& config,
                                       RngStream& rng) {
  const EvidenceEstimate e1 = run_equilibrium_ti(kernel1, config, rng);
  const EvidenceEstimate e2 = run_equilibrium_ti(kernel2, config, rng);
  EvidenceEstimate bf = make_estimate(
      e2.log_bf_or_log_ml - e1.log_bf_or_log_ml, e1.variance_raw + e2.variance_raw,
      config.n_iter, rng.master_seed(), config.method);
  return bf;
}

namespace {

NetiDiffResult run_sweep(const std::function<void(double)>& step,
                         const std::function<double()>& phi,
                         const RunConfig& config, std::int64_t n_rungs,
                         std::uint64_t seed, Method method) {
  LadderConfig lc = config.ladder;
  lc.count = n_rungs;
  const Ladder ladder = make_ladder(lc);

  Trace trace;
  trace.points.reserve(ladder.taus.size() + 2);
  std::int64_t step_idx = 0;
  if (lc.kind == LadderKind::SIGMOID) {
    // The post-burn-in state is a draw at tau = 0; record it so the
    // integral covers [0, tau_1].
    trace.points.push_back({step_idx++, 0.0, phi()});
  }
  for (double tau : ladder.taus) {
    step(tau);
    trace.points.push_back({step_idx++, tau, phi()});
  }
  if (lc.kind == LadderKind::SIGMOID) {
    // phi does not depend on tau, so the last state also serves at tau = 1.
    trace.points.push_back({step_idx++, 1.0, trace.points.back().phi});
  }

  NetiDiffResult out;
  out.estimate = make_estimate(neti_path_integral(trace),
                               estimator_variance(trace), config.n_iter, seed,
                               method);
  out.trace = std::move(trace);
  return out;
}

}  // namespace

NetiDiffResult run_neti_diff(PairKernel& kernel, const RunConfig& config,
                             RngStream& rng) {
  if (config.method != Method::NETI_DIFF) {
    throw std::invalid_argument("run_neti_diff: method must be NETI_DIFF");
  }
  if (config.n_iter < 2) {
    throw std::invalid_argument("run_neti_diff: n_iter >= 2");
  }
  kernel.initialize(rng);
  for (std::int64_t i = 0; i < config.neti_burn_in; ++i) kernel.step(0.0, rng);
  const std::int64_t n_rungs = config.n_iter / kernel.cost_per_step();
  return run_sweep([&](double tau) { kernel.step(tau, rng); },
                   [&]() { return kernel.log_lik_ratio(); }, config, n_rungs,
                   rng.master_seed(), Method::NETI_DIFF);
}

NetiDiffResult run_neti(SingleModelKernel& kernel, const RunConfig& config,
                        RngStream& rng) {
  if (config.n_iter < 2) {
    throw std::invalid_argument("run_neti: n_iter >= 2");
  }
  kernel.initialize(rng);
  for (std::int64_t i = 0; i < config.neti_burn_in; ++i) kernel.step(0.0, rng);
  return run_sweep([&](double tau) { kernel.step(tau, rng); },
                   [&]() { return kernel.log_lik(); }, config, config.n_iter,
                   rng.master_seed(), Method::NETI);
}

double jarzynski_log_marginal(std::span<const double> posterior_logliks) {
  if (posterior_logliks.empty()) {
    throw std::invalid_argument("jarzynski_log_marginal: empty sample");
  }
  std::vector<double> neg(posterior_logliks.size());
  std::transform(posterior_logliks.begin(), posterior_logliks.end(),
                 neg.begin(), [](double l) { return -l; });
  return -log_mean_exp(neg);
}

double jarzynski_log_bayes_factor(
    std::span<const double> delta_log_unnorm_posterior) {
  if (delta_log_unnorm_posterior.empty()) {
    throw std::invalid_argument("jarzynski_log_bayes_factor: empty sample");
  }
  std::vector<double> neg(delta_log_unnorm_posterior.size());
  std::transform(delta_log_unnorm_posterior.begin(),
                 delta_log_unnorm_posterior.end(), neg.begin(),
                 [](double d) { return -d; });
  return log_mean_exp(neg);
}

std::vector<double> model_posteriors_from_bfs(
    std::span<const double> log_bf_to_reference,
    std::span<const double> priors) {
  if (log_bf_to_reference.size() != priors.size() || priors.empty()) {
    throw std::invalid_argument("model_posteriors_from_bfs: size mismatch");
  }
  double prior_sum = 0.0;
  for (double p : priors) {
    if (!(p > 0.0)) {
      throw std::invalid_argument("model_posteriors_from_bfs: priors > 0");
    }
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("model_posteriors_from_bfs: priors must sum to 1");
  }
  std::vector<double> log_post(priors.size());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    log_post[i] = log_bf_to_reference[i] + std::log(priors[i]);
  }
  const double norm = log_sum_exp(log_post);
  std::vector<double> post(priors.size());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    post[i] = std::exp(log_post[i] - norm);
  }
  return post;
}

}  // namespace evidencepath
