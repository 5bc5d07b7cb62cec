#include "evidencepath/ladders.hpp"

#include <cmath>
#include <stdexcept>

namespace evidencepath {

Ladder power_law_ladder(const LadderConfig& config) {
  if (config.kind != LadderKind::POWER) {
    throw std::invalid_argument("power_law_ladder: config.kind must be POWER");
  }
  if (config.count < 2) {
    throw std::invalid_argument("power_law_ladder: need at least 2 rungs");
  }
  if (!(config.alpha > 0.0)) {
    throw std::invalid_argument("power_law_ladder: alpha must be > 0");
  }
  const std::int64_t k_count = config.count;
  Ladder ladder;
  ladder.config = config;
  ladder.taus.resize(static_cast<std::size_t>(k_count));
  for (std::int64_t k = 1; k <= k_count; ++k) {
    ladder.taus[static_cast<std::size_t>(k - 1)] =
        std::pow(static_cast<double>(k - 1) / static_cast<double>(k_count - 1),
                 config.alpha);
  }
  ladder.taus.front() = 0.0;
  ladder.taus.back() = 1.0;
  return ladder;
}

Ladder sigmoid_ladder(std::int64_t n_iter, double alpha) {
  if (n_iter < 2) throw std::invalid_argument("sigmoid_ladder: n_iter >= 2");
  if (!(alpha > 0.0)) throw std::invalid_argument("sigmoid_ladder: alpha > 0");
  const std::int64_t half = n_iter / 2;
  // Smallest N* with (half/N*)^alpha < 0.5. The closed form floor(x*) with
  // x* = half * 0.5^(-1/alpha) sits exactly on the boundary when x* is an
  // integer, so take floor(x*) + 1 to keep the inequality strict.
  const double x_star = static_cast<double>(half) * std::pow(0.5, -1.0 / alpha);
  std::int64_t n_star = static_cast<std::int64_t>(std::floor(x_star)) + 1;
  while (std::pow(static_cast<double>(half) / static_cast<double>(n_star),
                  alpha) >= 0.5) {
    ++n_star;
  }
  Ladder ladder;
  ladder.config = LadderConfig{LadderKind::SIGMOID, n_iter, alpha};
  ladder.taus.reserve(static_cast<std::size_t>(n_iter));
  for (std::int64_t i = 1; i <= half; ++i) {
    ladder.taus.push_back(std::pow(
        static_cast<double>(i) / static_cast<double>(n_star), alpha));
  }
  if (n_iter % 2 == 1) ladder.taus.push_back(0.5);
  for (std::int64_t i = half; i >= 1; --i) {
    ladder.taus.push_back(1.0 - ladder.taus[static_cast<std::size_t>(i - 1)]);
  }
  return ladder;
}

Ladder make_ladder(const LadderConfig& config) {
  return config.kind == LadderKind::POWER ? power_law_ladder(config)
                                          : sigmoid_ladder(config.count,
                                                           config.alpha);
}

double optimal_insert(double tau_left, double tau_right, double f_left,
                      double f_right, double v_left, double v_right) {
  if (!(tau_left < tau_right)) {
    throw std::invalid_argument("optimal_insert: need tau_left < tau_right");
  }
  const double mid = 0.5 * (tau_left + tau_right);
  const double denom = v_left - v_right;
  if (std::abs(denom) < 1e-12) return mid;
  const double t =
      (f_right - f_left + tau_left * v_left - tau_right * v_right) / denom;
  if (!(t > tau_left && t < tau_right) || !std::isfinite(t)) return mid;
  return t;
}

std::vector<double> refine_ladder_with_estimates(
    const std::vector<double>& taus, const std::vector<double>& f,
    const std::vector<double>& v) {
  if (taus.size() != f.size() || taus.size() != v.size()) {
    throw std::invalid_argument("refine_ladder: size mismatch");
  }
  if (taus.size() < 3) return taus;
  std::vector<double> out = taus;
  for (std::size_t k = 1; k + 1 < taus.size(); ++k) {
    const double t = optimal_insert(out[k - 1], taus[k + 1], f[k - 1],
                                    f[k + 1], v[k - 1], v[k + 1]);
    // keep strict ordering against the already-updated left neighbour
    if (t > out[k - 1] && t < taus[k + 1]) out[k] = t;
  }
  return out;
}

}  // namespace evidencepath
