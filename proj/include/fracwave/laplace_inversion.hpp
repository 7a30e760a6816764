#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace fracwave {

using Complex = std::complex<double>;

/// Callable returning the transform value F(s). Must be analytic to the right
/// of (and on) the inversion contour, except possibly for a branch point at 0,
/// and must use the principal branch for fractional powers of s.
using TransformEvaluator = std::function<Complex(Complex)>;

/// s^p with the principal logarithm, arg s in (-pi, pi].
inline Complex complex_pow(Complex s, double p) {
    return std::exp(p * std::log(s));
}

struct InversionControl {
    enum class Method { talbot, gaver_stehfest };
    Method method = Method::talbot;
    int nodes = 32;
    double scale = 0.4;  // Talbot contour radius = scale * nodes / t
};

/// Stehfest coefficients for an even number of terms n.
std::vector<double> stehfest_weights(int n);

/// Numerical inverse Laplace transform at a single time t > 0.
/// Deterministic for fixed ctrl. Throws EvaluationError when the transform
/// evaluator produces non-finite values, std::invalid_argument for bad controls.
double invert(const TransformEvaluator& fhat, double t, const InversionControl& ctrl = {});

/// Talbot inversion of a transform given in log form, F(s) = exp(log_fhat(s)).
/// The contour term exp(s t + log F(s)) is formed in a single exponentiation,
/// which keeps transforms such as exp(-a s^nu) with nu > 1/2 evaluable where
/// F(s) alone would overflow near the negative real axis.
double invert_log_transform(const TransformEvaluator& log_fhat, double t,
                            const InversionControl& ctrl = {});

/// Batch inversion on a strictly increasing grid of positive times.
/// Pointwise identical to calling invert at each entry.
Eigen::ArrayXd invert_grid(const TransformEvaluator& fhat,
                           const Eigen::Ref<const Eigen::ArrayXd>& ts,
                           const InversionControl& ctrl = {});

}  // namespace fracwave
