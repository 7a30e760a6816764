#include "fracwave/aux_kernel.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;
constexpr double kTinyTime = 1e-8;  // below this, R is indistinguishable from 0

bool is_half(double x) { return x == 0.5; }

double closed_half_mu0(double a, double t) {
    return a * std::exp(-a * a / (4.0 * t)) / (2.0 * kSqrtPi * std::pow(t, 1.5));
}

double closed_half_mu_half(double a, double t) {
    return std::exp(-a * a / (4.0 * t)) / std::sqrt(kPi * t);
}

double closed_half_mu1(double a, double t) {
    return erfc(a / (2.0 * std::sqrt(t)));
}

// Delayed power for nu = 1, mu > 0: (t-a)^{mu-1}/Gamma(mu) for t > a, else 0.
double closed_delay(double mu, double a, double t) {
    if (!(t > a)) return 0.0;
    if (mu == 1.0) return 1.0;  // Heaviside step
    return std::pow(t - a, mu - 1.0) / gamma(mu);
}

bool has_closed_form(const AuxParams& p) {
    if (p.nu == 1.0) return p.mu > 0.0;
    return is_half(p.nu) && (p.mu == 0.0 || is_half(p.mu) || p.mu == 1.0);
}

double closed_form(const AuxParams& p, double t) {
    if (p.nu == 1.0) return closed_delay(p.mu, p.a, t);
    if (p.mu == 0.0) return closed_half_mu0(p.a, t);
    if (is_half(p.mu)) return closed_half_mu_half(p.a, t);
    return closed_half_mu1(p.a, t);
}

// Saddle of Re(st - a s^nu) on the positive real axis: s* = (a nu / t)^{1/(1-nu)}.
// The fixed-Talbot radius scale*M/t must reach it, otherwise the contour sum
// converges to a value dominated by discretization error far above the true
// (exponentially small) result.
int talbot_nodes_for(const AuxParams& p, double t, const InversionControl& ictrl) {
    const double sstar = std::pow(p.a * p.nu / t, 1.0 / (1.0 - p.nu));
    const int needed = static_cast<int>(std::ceil(t * sstar / ictrl.scale)) + 16;
    return std::clamp(std::max(ictrl.nodes, needed), 8, 4096);
}

double invert_talbot_adaptive(const AuxParams& p, double t, const InversionControl& ictrl) {
    // Exponent at the saddle; below double range the value underflows to 0.
    const double sstar = std::pow(p.a * p.nu / t, 1.0 / (1.0 - p.nu));
    if (sstar * t - p.a * std::pow(sstar, p.nu) < -745.0) return 0.0;
    InversionControl c = ictrl;
    c.method = InversionControl::Method::talbot;
    c.nodes = talbot_nodes_for(p, t, ictrl);
    const double mu = p.mu, nu = p.nu, a = p.a;
    return invert_log_transform(
        [mu, nu, a](Complex s) {
            const Complex ls = std::log(s);
            return -a * std::exp(nu * ls) - mu * ls;
        },
        t, c);
}

struct RealIntegralResult {
    double value;
    double err_est;
};

RealIntegralResult real_integral_impl(double nu, double a, double t, double tol) {
    // Tail of the untruncated integral past X is below exp(-tX)/(pi t).
    const double full_bound = 1.0 / (kPi * t);
    if (full_bound < tol) return {0.0, full_bound};
    const double X = -std::log(tol * kPi * t / 2.0) / t;
    const double tail = std::exp(-t * X) / (kPi * t);

    // Substitution u = x^nu smooths the x^nu cusp at the origin.
    const double cs = cospi(nu), sn = sinpi(nu);
    const double inv_nu = 1.0 / nu;
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double x = std::pow(u, inv_nu);
        return inv_nu * std::pow(u, inv_nu - 1.0) * std::exp(-t * x - a * cs * u) *
               std::sin(a * sn * u) / kPi;
    };
    QuadResult q = adaptive_simpson(integrand, 0.0, std::pow(X, nu), 0.5 * tol);
    return {q.value, q.err_est + tail};
}

}  // namespace

void AuxParams::validate() const {
    if (!(mu >= 0.0) || !std::isfinite(mu))
        throw std::domain_error("AuxParams: mu must be >= 0");
    if (!(nu > 0.0 && nu <= 1.0)) throw std::domain_error("AuxParams: nu must be in (0,1]");
    if (!(a > 0.0) || !std::isfinite(a)) throw std::domain_error("AuxParams: a must be > 0");
}

TransformEvaluator aux_transform(double mu, double nu, double a) {
    return [mu, nu, a](Complex s) {
        const Complex ls = std::log(s);
        return std::exp(-a * std::exp(nu * ls) - mu * ls);
    };
}

AuxValue aux_eval(const AuxParams& p, double t, const InversionControl& ictrl) {
    p.validate();
    if (!(t > 0.0)) throw std::domain_error("aux_eval: t must be > 0");
    if (p.nu == 1.0 && p.mu == 0.0)
        throw std::domain_error(
            "aux_eval: (mu, nu) = (0, 1) is a Dirac impulse; use aux_dirac_convolve");

    if (t < kTinyTime) return {0.0, AuxPath::closed_form, 0.0};

    if (has_closed_form(p)) {
        const double v = closed_form(p, t);
        return {v, AuxPath::closed_form, 8.0 * 2.22e-16 * (1.0 + std::abs(v))};
    }
    if (p.mu == 0.0 && p.nu <= 0.5) {
        RealIntegralResult r = real_integral_impl(p.nu, p.a, t, 1e-10);
        return {r.value, AuxPath::real_integral, r.err_est};
    }
    const double v = invert_talbot_adaptive(p, t, ictrl);
    InversionControl coarse = ictrl;
    coarse.nodes = std::max(8, ictrl.nodes / 2);
    const double v_lo = invert_talbot_adaptive(p, t, coarse);
    return {v, AuxPath::laplace_inversion, std::abs(v - v_lo)};
}

double aux_eval_value(const AuxParams& p, double t, const InversionControl& ictrl) {
    p.validate();
    if (!(t > 0.0)) throw std::domain_error("aux_eval_value: t must be > 0");
    if (p.nu == 1.0 && p.mu == 0.0)
        throw std::domain_error("aux_eval_value: Dirac regime; use aux_dirac_convolve");
    if (t < kTinyTime) return 0.0;
    if (has_closed_form(p)) return closed_form(p, t);
    if (p.mu == 0.0 && p.nu <= 0.5) return real_integral_impl(p.nu, p.a, t, 1e-10).value;
    return invert_talbot_adaptive(p, t, ictrl);
}

double aux_eval_inversion(const AuxParams& p, double t, const InversionControl& ictrl) {
    p.validate();
    if (!(t > 0.0)) throw std::domain_error("aux_eval_inversion: t must be > 0");
    if (p.nu == 1.0)
        throw std::domain_error("aux_eval_inversion: nu = 1 transforms are never inverted "
                                "numerically (pure delay content)");
    return invert_talbot_adaptive(p, t, ictrl);
}

double aux_real_integral(double nu, double a, double t, double tol) {
    if (!(nu > 0.0 && nu <= 0.5))
        throw std::domain_error("aux_real_integral: nu must be in (0, 1/2]");
    if (!(a > 0.0)) throw std::domain_error("aux_real_integral: a must be > 0");
    if (!(t > 0.0)) throw std::domain_error("aux_real_integral: t must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("aux_real_integral: tol must be > 0");
    return real_integral_impl(nu, a, t, tol).value;
}

double aux_shift(const AuxParams& p, double extra_mu, double t, const InversionControl& ictrl) {
    if (!(extra_mu >= 0.0)) throw std::domain_error("aux_shift: extra_mu must be >= 0");
    return aux_eval(AuxParams{p.mu + extra_mu, p.nu, p.a}, t, ictrl).value;
}

double aux_tail_integral(const AuxParams& p, double t, double tol, const InversionControl& ictrl) {
    p.validate();
    if (!(t > 0.0)) throw std::domain_error("aux_tail_integral: t must be > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("aux_tail_integral: tol must be > 0");

    auto f = [&](double ap) { return aux_eval_value(AuxParams{p.mu, p.nu, ap}, t, ictrl); };

    double acc = 0.0;
    double lo = p.a;
    double width = std::max(1.0, 0.25 * p.a);
    int quiet = 0;
    const double panel_tol = tol / 16.0;
    while (lo < p.a + 400.0) {
        const double hi = lo + width;
        QuadResult q = adaptive_simpson(f, lo, hi, panel_tol);
        acc += q.value;
        if (std::abs(q.value) < panel_tol && std::abs(f(hi)) * width < panel_tol) {
            if (++quiet >= 2) return acc;
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    throw ToleranceError("aux_tail_integral: integrand did not decay within the search window");
}

double aux_dirac_convolve(double a, const DataFunction& g, double t) {
    if (!(a > 0.0)) throw std::domain_error("aux_dirac_convolve: a must be > 0");
    if (!(t > a)) return 0.0;
    return g(t - a);
}

SampledFn aux_ode_residual_from_samples(const SampledFn& y, const AuxParams& p) {
    y.validate();
    const Eigen::Index n = y.grid.n;
    if (n < 2) throw std::invalid_argument("aux_ode_residual: need at least 3 samples");
    const double dt = y.grid.dt;

    SampledFn dnu = caputo_derivative(y, p.nu);

    Eigen::ArrayXd yp(n + 1);
    yp[0] = (-3.0 * y.values[0] + 4.0 * y.values[1] - y.values[2]) / (2.0 * dt);
    for (Eigen::Index k = 1; k < n; ++k)
        yp[k] = (y.values[k + 1] - y.values[k - 1]) / (2.0 * dt);
    yp[n] = (3.0 * y.values[n] - 4.0 * y.values[n - 1] + y.values[n - 2]) / (2.0 * dt);

    SampledFn out;
    out.grid = y.grid;
    out.values = Eigen::ArrayXd(n + 1);
    for (Eigen::Index k = 0; k <= n; ++k) {
        const double t = y.grid.time(k);
        out.values[k] = p.a * p.nu * dnu.values[k] - (t * yp[k] + (1.0 - p.mu) * y.values[k]);
    }
    return out;
}

SampledFn aux_ode_residual(const AuxParams& p, const TimeGrid& grid,
                           const InversionControl& ictrl) {
    p.validate();
    grid.validate();
    if (!(p.nu < 1.0)) throw std::domain_error("aux_ode_residual: requires nu < 1");

    SampledFn y;
    y.grid = grid;
    y.values = Eigen::ArrayXd(grid.samples());
    y.values[0] = 0.0;  // R vanishes as t -> 0+
    for (Eigen::Index k = 1; k <= grid.n; ++k)
        y.values[k] = aux_eval_value(p, grid.time(k), ictrl);
    return aux_ode_residual_from_samples(y, p);
}

}  // namespace fracwave
