#pragma once

#include "fracwave/laplace_inversion.hpp"

#include <Eigen/Core>

#include <limits>
#include <vector>

namespace fracwave {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Parametric description of user data: initial profiles f, g, boundary data h,
/// and separable forcing factors. Gaussians decay; every other kind has compact
/// support (an infinite right endpoint is allowed for time data such as h == 1).
class DataFunction {
  public:
    enum class Kind { zero, gaussian, indicator, polynomial, table, dirac };

    DataFunction() = default;

    static DataFunction zero();
    /// amplitude * exp(-((x-center)/width)^2), width > 0.
    static DataFunction gaussian(double center, double width, double amplitude);
    /// amplitude on [lo, hi] (hi may be +inf), 0 elsewhere.
    static DataFunction indicator(double lo, double hi, double amplitude);
    /// sum_k coeffs[k] x^k on [lo, hi] (hi may be +inf), 0 elsewhere.
    static DataFunction polynomial(std::vector<double> coeffs, double lo, double hi);
    /// Piecewise-linear interpolation of (xs, ys); xs strictly increasing; 0 outside.
    static DataFunction table(Eigen::ArrayXd xs, Eigen::ArrayXd ys);
    /// Point mass of the given weight at center. Has no pointwise values.
    static DataFunction dirac(double center, double weight);

    Kind kind() const { return kind_; }
    bool is_zero() const;
    bool is_dirac() const { return kind_ == Kind::dirac; }

    /// Pointwise evaluation; throws std::domain_error for dirac data.
    double operator()(double x) const;

    /// Effective support (gaussians truncated where |f| < 1e-18 * |amplitude|).
    Interval support() const;
    bool has_bounded_support() const;

    /// Exact integral over [a, b] (per-kind closed form).
    double integral(double a, double b) const;

    /// Second derivative where it exists classically (gaussian, polynomial
    /// interior, zero); throws std::domain_error otherwise.
    double second_derivative(double x) const;

    /// Laplace transform at complex s, treating the function as time data on
    /// [0, inf). Closed form for every kind except gaussian, which throws.
    bool has_laplace_transform() const { return kind_ != Kind::gaussian; }
    Complex laplace(Complex s) const;

    // parameter access (meaning depends on kind)
    double center() const { return p0_; }
    double width() const { return p1_; }
    double amplitude() const { return p2_; }
    double lo() const { return p0_; }
    double hi() const { return p1_; }
    double weight() const { return p2_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const Eigen::ArrayXd& xs() const { return xs_; }
    const Eigen::ArrayXd& ys() const { return ys_; }

    static constexpr double inf = std::numeric_limits<double>::infinity();

  private:
    Kind kind_ = Kind::zero;
    double p0_ = 0.0, p1_ = 0.0, p2_ = 0.0;
    std::vector<double> coeffs_;
    Eigen::ArrayXd xs_, ys_;
};

}  // namespace fracwave
