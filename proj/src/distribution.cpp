#include "fracwave/distribution.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracwave {

namespace {

constexpr double kTinyX = 1e-12;

// tail mass past X: int_X^inf p dx = (1/2) R_{1,nu}(X/sqrt(kappa), t)
double tail_mass(const FracDist& d, double X, const InversionControl& ictrl) {
    return 0.5 * aux_eval_value(AuxParams{1.0, d.nu, X / std::sqrt(d.kappa)}, d.t, ictrl);
}

double find_truncation_radius(const FracDist& d, double tol, const InversionControl& ictrl) {
    double X = std::sqrt(d.kappa) * (1.0 + 2.0 * std::pow(d.t, d.nu));
    for (int i = 0; i < 200; ++i) {
        if (std::abs(tail_mass(d, X, ictrl)) < tol) return X;
        X *= 1.4;
    }
    throw ToleranceError("FracDist: transform-space tail bound did not reach tolerance");
}

double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa draw, strictly inside (0,1); independent of library
    // distribution implementations for cross-platform reproducibility
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

void FracDist::validate() const {
    if (!(nu > 0.0 && nu <= 0.5))
        throw std::invalid_argument("FracDist: nu must be in (0, 1/2] (diffusion regime)");
    if (!(kappa > 0.0)) throw std::invalid_argument("FracDist: kappa must be > 0");
    if (!(t > 0.0)) throw std::invalid_argument("FracDist: t must be > 0");
}

double pdf(const FracDist& d, double x, const InversionControl& ictrl) {
    d.validate();
    const double sk = std::sqrt(d.kappa);
    const double a = std::abs(x) / sk;
    const double mu = 1.0 - d.nu;
    if (a < kTinyX) return std::pow(d.t, mu - 1.0) / gamma(mu) / (2.0 * sk);
    return aux_eval_value(AuxParams{mu, d.nu, a}, d.t, ictrl) / (2.0 * sk);
}

double total_mass(const FracDist& d, double tol, const InversionControl& ictrl) {
    d.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("total_mass: tol must be > 0");
    const double X = find_truncation_radius(d, 0.25 * tol, ictrl);
    auto f = [&](double x) { return pdf(d, x, ictrl); };
    const QuadResult q = adaptive_simpson(f, 0.0, X, 0.125 * tol);
    return 2.0 * q.value;
}

double rl_mass(double nu, double t) {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("rl_mass: nu must be in (0,1]");
    if (!(t > 0.0)) throw std::invalid_argument("rl_mass: t must be > 0");
    return std::pow(t, 2.0 * nu - 1.0) / gamma(2.0 * nu);
}

double generalized_gaussian_pdf(double a, double b, double c, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("generalized_gaussian_pdf: a, b must be > 0");
    return b / (2.0 * a * gamma(1.0 / b)) * std::exp(-std::pow(std::abs(x - c) / a, b));
}

FracDistTable::FracDistTable(const FracDist& d, double tol, Eigen::Index points,
                             const InversionControl& ictrl)
    : dist_(d) {
    d.validate();
    if (points < 16) throw std::invalid_argument("FracDistTable: need at least 16 points");
    radius_ = find_truncation_radius(d, 0.1 * tol, ictrl);
    xs_ = Eigen::ArrayXd::LinSpaced(points, 0.0, radius_);
    half_cdf_ = Eigen::ArrayXd::Zero(points);

    Eigen::ArrayXd pv(points);
    for (Eigen::Index i = 0; i < points; ++i) pv[i] = pdf(d, xs_[i], ictrl);

    // cumulative Simpson over node pairs; odd nodes by the half-panel rule
    const double h = xs_[1] - xs_[0];
    for (Eigen::Index i = 2; i < points; i += 2)
        half_cdf_[i] = half_cdf_[i - 2] + h / 3.0 * (pv[i - 2] + 4.0 * pv[i - 1] + pv[i]);
    for (Eigen::Index i = 1; i < points; i += 2) {
        if (i + 1 < points)
            half_cdf_[i] =
                half_cdf_[i - 1] + h / 12.0 * (5.0 * pv[i - 1] + 8.0 * pv[i] - pv[i + 1]);
        else
            half_cdf_[i] = half_cdf_[i - 1] + 0.5 * h * (pv[i - 1] + pv[i]);
    }
}

double FracDistTable::cdf(double x) const {
    const double ax = std::abs(x);
    double half;
    if (ax >= radius_) {
        half = half_cdf_[half_cdf_.size() - 1];
    } else {
        const double pos = ax / radius_ * static_cast<double>(xs_.size() - 1);
        const Eigen::Index i = std::min(static_cast<Eigen::Index>(pos),
                                        static_cast<Eigen::Index>(xs_.size() - 2));
        const double w = pos - static_cast<double>(i);
        half = half_cdf_[i] + w * (half_cdf_[i + 1] - half_cdf_[i]);
    }
    const double c = (x >= 0.0) ? 0.5 + half : 0.5 - half;
    return std::clamp(c, 0.0, 1.0);
}

double FracDistTable::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("FracDistTable::quantile: p must be in (0,1)");
    double lo = -radius_, hi = radius_;
    if (p <= cdf(lo)) return lo;
    if (p >= cdf(hi)) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * (1.0 + std::abs(mid))) return 0.5 * (lo + hi);
    }
    throw ConvergenceError("FracDistTable::quantile: bisection did not converge");
}

Eigen::ArrayXd FracDistTable::sample(Eigen::Index n, std::mt19937_64& rng) const {
    Eigen::ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = quantile(uniform01(rng));
    return out;
}

}  // namespace fracwave
