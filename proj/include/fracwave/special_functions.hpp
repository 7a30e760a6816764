#pragma once

#include <cstddef>

namespace fracwave {

/// Truncation control for entire-series evaluations (Mainardi/Wright).
/// At least one of abs_tol, rel_tol must be positive.
struct SeriesControl {
    std::size_t max_terms = 256;
    double abs_tol = 1e-280;
    double rel_tol = 1e-15;
};

/// Value of a truncated series together with the estimated truncation error.
struct SeriesValue {
    double value = 0.0;
    double err_est = 0.0;
    std::size_t terms = 0;
};

/// sin(pi*x) and cos(pi*x) with exact argument reduction, so that integer
/// (resp. half-integer) arguments yield exact zeros.
double sinpi(double x);
double cospi(double x);

/// Euler gamma function. Lanczos approximation, reflection for x < 1/2.
/// Throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma(double x);

/// 1/Gamma(x); equal to 0 at the poles, finite everywhere else.
double reciprocal_gamma(double x);

/// Natural log of |Gamma(x)|.
double log_abs_gamma(double x);

/// Complementary error function, 2/sqrt(pi) * integral of exp(-z^2) over [x, inf).
double erfc(double x);

/// M(z; nu) = sum_{j>=0} (-z)^j / (j! Gamma(-nu j + 1 - nu)),  0 < nu < 1, z >= 0.
/// Throws ConvergenceError if max_terms is hit, std::range_error when the
/// alternating terms peak above the cancellation threshold (~1e15).
SeriesValue mainardi_m(double z, double nu, const SeriesControl& ctrl = {});

/// W(z; alpha, beta) = sum_{j>=0} z^j / (j! Gamma(alpha j + beta)),  alpha > -1.
/// Terms whose gamma argument sits on a pole contribute zero.
SeriesValue wright_w(double z, double alpha, double beta, const SeriesControl& ctrl = {});

}  // namespace fracwave
