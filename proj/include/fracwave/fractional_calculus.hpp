#pragma once

#include <Eigen/Core>

namespace fracwave {

/// Uniform time grid t_k = k*dt, k = 0..n.
struct TimeGrid {
    double dt = 0.0;
    Eigen::Index n = 0;

    double time(Eigen::Index k) const { return dt * static_cast<double>(k); }
    Eigen::Index samples() const { return n + 1; }
    void validate() const;
};

/// Function samples on a uniform grid; values has length n+1.
struct SampledFn {
    TimeGrid grid;
    Eigen::ArrayXd values;

    void validate(bool require_finite = true) const;
};

/// Riemann-Liouville fractional integral of positive order by the
/// product-trapezoidal rule (exact for piecewise-linear input). Node 0 is 0.
SampledFn rl_integral(const SampledFn& y, double order);

/// Caputo fractional derivative of order in (0,1] by the L1 scheme;
/// order 1 reduces to backward differences. Node 0 is 0.
SampledFn caputo_derivative(const SampledFn& y, double order);

/// Riemann-Liouville derivative via the Caputo relation:
/// adds y(0) * t^{-order} / Gamma(1-order). Node 0 becomes +-inf when
/// y(0) != 0 and order < 1.
SampledFn rl_derivative(const SampledFn& y, double order);

}  // namespace fracwave
