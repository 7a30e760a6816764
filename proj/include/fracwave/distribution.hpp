#pragma once

#include "fracwave/aux_kernel.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace fracwave {

/// The symmetric probability density generated by the diffusion-regime
/// equation, p(x,t) = (1/(2 sqrt(kappa))) R_{1-nu,nu}(|x|/sqrt(kappa), t).
/// Normal with variance t when nu = 1/2 and kappa = 1/2.
struct FracDist {
    double nu = 0.5;     // in (0, 1/2]
    double kappa = 1.0;  // > 0
    double t = 1.0;      // > 0

    void validate() const;
};

double pdf(const FracDist& d, double x, const InversionControl& ictrl = {});

/// Numerical total mass; the truncation radius is grown until the transform-
/// space tail bound (1/2) R_{1,nu}(X/sqrt(kappa), t) drops below tol.
/// The density integrates to 1, so the returned value should match 1 within tol.
double total_mass(const FracDist& d, double tol = 1e-6, const InversionControl& ictrl = {});

/// Total mass t^{2 nu - 1}/Gamma(2 nu) of the density generated with the
/// Riemann-Liouville derivative; equal to 1 exactly when nu = 1/2.
double rl_mass(double nu, double t);

/// Generalized Gaussian density b/(2 a Gamma(1/b)) exp(-(|x-c|/a)^b);
/// comparison helper (normal at b=2, Laplace at b=1).
double generalized_gaussian_pdf(double a, double b, double c, double x);

/// CDF/quantile/sampling built on a cached cumulative-quadrature table.
/// Quantiles invert the cdf by bisection; sampling is inverse-transform on
/// uniforms drawn from a caller-seeded generator.
class FracDistTable {
  public:
    explicit FracDistTable(const FracDist& d, double tol = 1e-8, Eigen::Index points = 4097,
                           const InversionControl& ictrl = {});

    const FracDist& dist() const { return dist_; }
    double truncation_radius() const { return radius_; }

    double cdf(double x) const;
    double quantile(double p) const;  // p in (0,1)
    Eigen::ArrayXd sample(Eigen::Index n, std::mt19937_64& rng) const;

  private:
    FracDist dist_;
    double radius_ = 0.0;
    Eigen::ArrayXd xs_;        // grid on [0, radius]
    Eigen::ArrayXd half_cdf_;  // integral of pdf over [0, x]
};

}  // namespace fracwave
