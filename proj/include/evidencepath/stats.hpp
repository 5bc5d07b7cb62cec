#pragma once

#include <functional>
#include <span>

namespace evidencepath {

/// Standard normal CDF.
double norm_cdf(double x);

/// Upper tail P(Z > x), accurate far into the tail (erfc based).
double norm_cdf_upper(double x);

/// Standard normal quantile function. Accepts p in (0,1); accurate to a few
/// ulps for p down to ~1e-290 via bisection-seeded Newton on erfc.
double norm_ppf(double p);

/// Standard normal log density.
double norm_log_pdf(double x);

/// log(sum(exp(v))) with max shift.
double log_sum_exp(std::span<const double> v);

/// log(mean(exp(v))) with max shift.
double log_mean_exp(std::span<const double> v);

/// log(1 + exp(x)) without overflow.
double log1p_exp(double x);

/// Adaptive Gauss-Kronrod 15(7) quadrature of f over [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10,
                          int max_depth = 60);

/// log of integral of exp(log_f) over [a, b]. Scans a coarse grid for the
/// maximum, integrates the shifted integrand adaptively, returns shift +
/// log(integral). Intended for sharply peaked log densities.
double log_integral_exp(const std::function<double(double)>& log_f, double a,
                        double b, double rel_tol = 1e-10);

}  // namespace evidencepath
