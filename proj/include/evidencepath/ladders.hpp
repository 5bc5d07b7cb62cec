#pragma once

#include <cstdint>
#include <vector>

namespace evidencepath {

enum class LadderKind { POWER, SIGMOID };

struct LadderConfig {
  LadderKind kind = LadderKind::POWER;
  std::int64_t count = 2;  // K for equilibrium TI, N_iter for the sweep
  double alpha = 5.0;
};

/// Strictly increasing inverse temperatures. POWER ladders run from 0 to 1
/// inclusive; SIGMOID ladders are mirror-symmetric about 0.5 and exclude the
/// endpoints by construction.
struct Ladder {
  std::vector<double> taus;
  LadderConfig config;
};

/// tau_k = ((k-1)/(K-1))^alpha for k = 1..K.
Ladder power_law_ladder(const LadderConfig& config);

/// Mirror-symmetric ladder: the first half follows (i/N*)^alpha with N* the
/// smallest integer keeping every first-half point strictly below 0.5, the
/// second half is the reflection 1 - tau. Odd counts pin one point at 0.5.
Ladder sigmoid_ladder(std::int64_t n_iter, double alpha);

Ladder make_ladder(const LadderConfig& config);

/// Variance-guided placement of a new inverse temperature inside
/// (tau_left, tau_right):
///   t = (f_right - f_left + tau_left*v_left - tau_right*v_right)
///       / (v_left - v_right)
/// with f the estimated expected log likelihoods and v the power-posterior
/// variances at the two rungs. Degenerate denominators and out-of-bracket
/// results fall back to the midpoint.
double optimal_insert(double tau_left, double tau_right, double f_left,
                      double f_right, double v_left, double v_right);

/// One interior refinement pass: every interior rung is replaced by the
/// optimal_insert of its neighbours' estimates. Endpoints stay fixed.
std::vector<double> refine_ladder_with_estimates(
    const std::vector<double>& taus, const std::vector<double>& f,
    const std::vector<double>& v);

}  // namespace evidencepath
