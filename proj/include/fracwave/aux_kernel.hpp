#pragma once

#include "fracwave/data_function.hpp"
#include "fracwave/fractional_calculus.hpp"
#include "fracwave/laplace_inversion.hpp"

namespace fracwave {

/// Parameters of the kernel family R_{mu,nu}(a,t), the inverse Laplace
/// transform of s^{-mu} exp(-a s^nu). Every Green's function in the library
/// is assembled from this family.
struct AuxParams {
    double mu = 0.0;   // >= 0
    double nu = 0.5;   // in (0, 1]
    double a = 1.0;    // > 0

    void validate() const;
};

enum class AuxPath { closed_form, real_integral, laplace_inversion, dirac_symbolic };

struct AuxValue {
    double value = 0.0;
    AuxPath path = AuxPath::closed_form;
    double err_est = 0.0;
};

/// Evaluate R_{mu,nu}(a,t) for t > 0, dispatching to the fastest applicable
/// path: closed form (nu = 1/2 with mu in {0, 1/2, 1}, and nu = 1 with mu > 0),
/// then the real-axis integral (mu = 0, nu <= 1/2), then Talbot inversion.
/// (mu, nu) = (0, 1) is the Dirac case and is rejected; use aux_dirac_convolve.
AuxValue aux_eval(const AuxParams& p, double t, const InversionControl& ictrl = {});

/// Same dispatch, value only; skips the error estimate (no node-doubling pass).
double aux_eval_value(const AuxParams& p, double t, const InversionControl& ictrl = {});

/// Force the Laplace-inversion route (cross-validation of the other paths).
/// Node count is raised adaptively so the contour reaches the integrand's
/// saddle; deterministic for fixed arguments and control.
double aux_eval_inversion(const AuxParams& p, double t, const InversionControl& ictrl = {});

/// The transform evaluator s -> s^{-mu} exp(-a s^nu) itself.
TransformEvaluator aux_transform(double mu, double nu, double a);

/// Real-axis integral representation, valid for 0 < nu <= 1/2:
///   (1/pi) * int_0^inf exp(-t x) exp(-a cos(pi nu) x^nu) sin(a sin(pi nu) x^nu) dx.
/// Truncated where the tail bound exp(-tX)/(pi t) drops below tol.
double aux_real_integral(double nu, double a, double t, double tol = 1e-10);

/// R_{mu + extra_mu, nu}(a, t): lowering extra orders is a parameter shift.
double aux_shift(const AuxParams& p, double extra_mu, double t,
                 const InversionControl& ictrl = {});

/// Quadrature of int_a^inf R_{mu,nu}(a',t) da'; equals R_{mu+nu,nu}(a,t).
double aux_tail_integral(const AuxParams& p, double t, double tol = 1e-7,
                         const InversionControl& ictrl = {});

/// Sifting convolution for the Dirac regime (mu, nu) = (0, 1):
/// int_0^t delta(tau - a) g(t - tau) dtau = g(t - a) for t > a, else 0.
double aux_dirac_convolve(double a, const DataFunction& g, double t);

/// Residual of the kernel's fractional ODE
///   a nu D^nu y = t y' + (1 - mu) y
/// on the samples y_k = R_{mu,nu}(a, t_k), with the L1 Caputo derivative and
/// central differences for y'. Tends to zero under grid refinement.
SampledFn aux_ode_residual(const AuxParams& p, const TimeGrid& grid,
                           const InversionControl& ictrl = {});

/// Residual of the same operator applied to caller-provided samples.
SampledFn aux_ode_residual_from_samples(const SampledFn& y, const AuxParams& p);

}  // namespace fracwave
