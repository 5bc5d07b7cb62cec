#include "evidencepath/core.hpp"

#include <cmath>
#include <stdexcept>

namespace evidencepath {

InverseTemperature::InverseTemperature(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("InverseTemperature: value must lie in [0,1]");
  }
}

void Dataset::validate() const {
  if (responses.size() != covariates.rows()) {
    throw std::invalid_argument(
        "Dataset: responses length must equal covariate row count");
  }
  if (static_cast<Eigen::Index>(names.size()) != covariates.cols()) {
    throw std::invalid_argument("Dataset: one name per covariate column");
  }
}

Eigen::Index Dataset::column(const std::string& name) const {
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == name) return static_cast<Eigen::Index>(j);
  }
  throw std::invalid_argument("Dataset: unknown column '" + name + "'");
}

namespace {
double checked(double v, const char* what) {
  if (std::isnan(v)) {
    throw std::domain_error(std::string("tempered target: non-finite ") + what);
  }
  return v;
}
}  // namespace

double tempered_log_density(const TemperedTarget& target,
                            const ParameterVector& theta,
                            InverseTemperature tau) {
  const double l1 = checked(target.log_lik1(theta), "log_lik1");
  const double l2 = checked(target.log_lik2(theta), "log_lik2");
  const double lp = checked(target.log_prior(theta), "log_prior");
  // Written as l1 + tau*(l2-l1) so linearity in tau holds to the last ulp.
  return l1 + tau.value() * (l2 - l1) + lp;
}

double log_lik_ratio(const TemperedTarget& target, const ParameterVector& theta) {
  const double l1 = checked(target.log_lik1(theta), "log_lik1");
  const double l2 = checked(target.log_lik2(theta), "log_lik2");
  return l2 - l1;
}

void Trace::validate() const {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].step <= points[i - 1].step) {
      throw std::invalid_argument("Trace: steps must be strictly increasing");
    }
    if (points[i].tau < points[i - 1].tau) {
      throw std::invalid_argument("Trace: taus must be non-decreasing");
    }
  }
}

std::string method_name(Method m) {
  switch (m) {
    case Method::TI_STANDARD: return "ti-standard";
    case Method::TI_OPTIMAL: return "ti-optimal";
    case Method::NETI: return "neti";
    case Method::NETI_DIFF: return "neti-diff";
    case Method::JARZYNSKI: return "jarzynski";
  }
  throw std::logic_error("method_name: unreachable");
}

Method method_from_name(const std::string& name) {
  if (name == "ti-standard") return Method::TI_STANDARD;
  if (name == "ti-optimal") return Method::TI_OPTIMAL;
  if (name == "neti") return Method::NETI;
  if (name == "neti-diff") return Method::NETI_DIFF;
  if (name == "jarzynski") return Method::JARZYNSKI;
  throw std::invalid_argument(
      "unknown method '" + name +
      "' (expected ti-standard, ti-optimal, neti, neti-diff or jarzynski)");
}

EvidenceEstimate make_estimate(double value, double raw_variance,
                               std::int64_t n_iter, std::uint64_t seed,
                               Method method) {
  EvidenceEstimate e;
  e.log_bf_or_log_ml = value;
  e.variance_raw = raw_variance;
  e.negative_variance_warning = raw_variance < 0.0;
  e.variance = raw_variance < 0.0 ? 0.0 : raw_variance;
  e.n_iter = n_iter;
  e.seed = seed;
  e.method = method;
  return e;
}

}  // namespace evidencepath
