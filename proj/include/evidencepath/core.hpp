#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace evidencepath {

using ParameterVector = Eigen::VectorXd;

/// Inverse temperature on the annealing path, tau in [0,1].
class InverseTemperature {
 public:
  explicit InverseTemperature(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Observed data: response vector plus named covariate columns.
struct Dataset {
  Eigen::VectorXd responses;
  Eigen::MatrixXd covariates;
  std::vector<std::string> names;

  void validate() const;
  Eigen::Index n() const { return responses.size(); }
  Eigen::Index column(const std::string& name) const;
};

/// A pair of model log likelihoods over one shared parameter layout, plus
/// the joint log prior. The joint prior must marginalise to each model's own
/// prior; with independent blocks (shared / model-1-only / model-2-only) that
/// holds by construction. Evaluations are pure and the struct is immutable
/// once built, so instances are safe to share across threads.
struct TemperedTarget {
  std::function<double(const ParameterVector&)> log_lik1;
  std::function<double(const ParameterVector&)> log_lik2;
  std::function<double(const ParameterVector&)> log_prior;
  Eigen::Index dim = 0;
};

/// Unnormalised tempered log density:
///   tau * logL2(theta) + (1 - tau) * logL1(theta) + log prior(theta).
double tempered_log_density(const TemperedTarget& target,
                            const ParameterVector& theta,
                            InverseTemperature tau);

/// logL2(theta) - logL1(theta); the integrand of the direct-path estimator.
double log_lik_ratio(const TemperedTarget& target, const ParameterVector& theta);

/// One record of an annealing sweep: step index, tau, and the
/// log-likelihood ratio (or log likelihood, for single-model sweeps) at the
/// current draw.
struct TracePoint {
  std::int64_t step;
  double tau;
  double phi;
};

struct Trace {
  std::vector<TracePoint> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
  /// steps strictly increasing, taus non-decreasing.
  void validate() const;
};

enum class Method { TI_STANDARD, TI_OPTIMAL, NETI, NETI_DIFF, JARZYNSKI };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

/// Result of one estimator run. `variance` is clamped at zero; the raw
/// path-variance sum (which can come out negative on noisy traces) is kept
/// in `variance_raw` with a warning flag.
struct EvidenceEstimate {
  double log_bf_or_log_ml = 0.0;
  double variance = 0.0;
  double variance_raw = 0.0;
  bool negative_variance_warning = false;
  std::int64_t n_iter = 0;
  std::uint64_t seed = 0;
  Method method = Method::NETI_DIFF;
};

EvidenceEstimate make_estimate(double value, double raw_variance,
                               std::int64_t n_iter, std::uint64_t seed,
                               Method method);

}  // namespace evidencepath
