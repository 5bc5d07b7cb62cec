#include "evidencepath/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace evidencepath {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLogSqrt2Pi = 0.9189385332046727;
}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_cdf_upper(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double norm_log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double norm_ppf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("norm_ppf: p must lie strictly inside (0,1)");
  }
  // Work on the lower half; the tail side carries the precision.
  const bool flip = p > 0.5;
  const double q = flip ? 1.0 - p : p;
  // Crude tail start, then bisect to localize, then Newton to machine eps.
  double lo = -40.0, hi = 0.0;
  double x = -std::sqrt(-2.0 * std::log(q));
  if (!(x > lo && x < hi)) x = -1.0;
  for (int i = 0; i < 12; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (norm_cdf(mid) < q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  x = std::clamp(x, lo, hi);
  for (int i = 0; i < 64; ++i) {
    const double err = norm_cdf(x) - q;
    const double step = err / std::exp(norm_log_pdf(x));
    double xn = x - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (norm_cdf(xn) < q) {
      lo = xn;
    } else {
      hi = xn;
    }
    const double dx = std::abs(xn - x);
    x = xn;
    if (dx <= 1e-15 * (1.0 + std::abs(x))) break;
  }
  return flip ? -x : x;
}

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("log_sum_exp: empty input");
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

double log_mean_exp(std::span<const double> v) {
  return log_sum_exp(v) - std::log(static_cast<double>(v.size()));
}

double log1p_exp(double x) {
  if (x > 35.0) return x;
  if (x < -35.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1,1]; embedded 7-point Gauss.
constexpr double kKronrodNodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,
    0.741531185599394,  0.864864423359769,  0.949107912342759,
    0.991455371120813};
constexpr double kKronrodWeights[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979,
    0.022935322010529};
constexpr double kGaussWeights[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct GkResult {
  double integral;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + h * kKronrodNodes[i]);
    fk += kKronrodWeights[i] * v;
    if (i % 2 == 1) fg += kGaussWeights[i / 2] * v;
  }
  return {h * fk, std::abs(h * (fk - fg))};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, int max_depth) {
  const GkResult r = gk15(f, a, b);
  if (depth >= max_depth || r.error <= tol * std::max(1.0, std::abs(r.integral))) {
    return r.integral;
  }
  const double m = 0.5 * (a + b);
  return adapt(f, a, m, tol * 0.7, depth + 1, max_depth) +
         adapt(f, m, b, tol * 0.7, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int max_depth) {
  if (!(a < b)) throw std::invalid_argument("integrate_adaptive: need a < b");
  return adapt(f, a, b, rel_tol, 0, max_depth);
}

double log_integral_exp(const std::function<double(double)>& log_f, double a,
                        double b, double rel_tol) {
  if (!(a < b)) throw std::invalid_argument("log_integral_exp: need a < b");
  const int n_scan = 512;
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n_scan; ++i) {
    const double x = a + (b - a) * i / n_scan;
    m = std::max(m, log_f(x));
  }
  if (!std::isfinite(m)) {
    throw std::domain_error("log_integral_exp: integrand has no finite peak");
  }
  const double shift = m;
  auto g = [&](double x) {
    const double v = log_f(x) - shift;
    return v < -745.0 ? 0.0 : std::exp(v);
  };
  const double integral = integrate_adaptive(g, a, b, rel_tol);
  if (!(integral > 0.0)) {
    throw std::domain_error("log_integral_exp: integral vanished");
  }
  return shift + std::log(integral);
}

}  // namespace evidencepath
