#include "fracwave/special_functions.hpp"
#include "fracwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fracwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,      -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Gamma for x >= 0.5 only.
double gamma_lanczos(double x) {
    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return kSqrt2Pi * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

double log_gamma_lanczos(double x) {
    const double z = x - 1.0;
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

struct SeriesTermGen {
    // Produces t_j = base_sign^j * |z|^j / j! * 1/Gamma(alpha j + beta),
    // switching to log-space once the gamma argument leaves Lanczos range.
    double abs_z;
    int sign_z;  // sign of z (+1, -1, or 0)
    double alpha;
    double beta;

    double pow_over_fact = 1.0;  // |z|^j / j!, updated incrementally
    bool pow_overflowed = false;
    std::size_t j = 0;

    double next() {
        const double arg = alpha * static_cast<double>(j) + beta;
        double term;
        if (sign_z == 0 && j > 0) {
            term = 0.0;
        } else if (is_nonpositive_integer(arg)) {
            term = 0.0;  // 1/Gamma vanishes at the poles
        } else if (std::abs(arg) <= 170.0 && !pow_overflowed) {
            term = pow_over_fact * reciprocal_gamma(arg);
        } else {
            // log-magnitude route for extreme arguments
            const double jj = static_cast<double>(j);
            double log_mag = (j == 0 ? 0.0 : jj * std::log(abs_z)) - log_abs_gamma(jj + 1.0);
            double sgn = 1.0;
            if (arg > 0.0) {
                log_mag -= log_abs_gamma(arg);
            } else {
                const double s = sinpi(arg);
                log_mag += std::log(std::abs(s) / kPi) + log_abs_gamma(1.0 - arg);
                sgn = (s < 0.0) ? -1.0 : 1.0;
            }
            term = (log_mag < -740.0) ? 0.0 : sgn * std::exp(log_mag);
        }
        if (sign_z < 0 && (j & 1u)) term = -term;

        ++j;
        if (!pow_overflowed) {
            pow_over_fact *= abs_z / static_cast<double>(j);
            if (pow_over_fact > 1e290) pow_overflowed = true;
        }
        return term;
    }
};

SeriesValue sum_series(SeriesTermGen gen, const SeriesControl& ctrl, const char* name) {
    if (ctrl.max_terms < 1) throw std::invalid_argument("SeriesControl.max_terms must be >= 1");
    if (!(ctrl.abs_tol > 0.0) && !(ctrl.rel_tol > 0.0))
        throw std::invalid_argument("SeriesControl needs a positive abs_tol or rel_tol");

    std::vector<double> terms;
    terms.reserve(64);
    double running = 0.0;
    double last = std::numeric_limits<double>::infinity();
    bool converged = false;
    std::size_t used = 0;

    for (std::size_t j = 0; j < ctrl.max_terms; ++j) {
        const double t = gen.next();
        if (std::abs(t) > 1e15)
            throw std::range_error(std::string(name) +
                                   ": series terms exceed 1e15; cancellation would destroy the result");
        terms.push_back(t);
        running += t;
        ++used;
        const double tol = std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(running));
        if (j >= 1 && std::abs(t) <= tol && last <= tol) {
            converged = true;
            break;
        }
        last = std::abs(t);
    }
    if (!converged)
        throw ConvergenceError(std::string(name) + ": series did not converge within " +
                               std::to_string(ctrl.max_terms) + " terms");

    // Compensated summation in descending magnitude (Neumaier).
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::abs(a) > std::abs(b); });
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        comp += (std::abs(sum) >= std::abs(t)) ? (sum - s) + t : (t - s) + sum;
        sum = s;
    }
    SeriesValue out;
    out.value = sum + comp;
    out.err_est = std::abs(terms.empty() ? 0.0 : terms.back()) +
                  std::numeric_limits<double>::epsilon() * std::abs(sum);
    out.terms = used;
    return out;
}

}  // namespace

double sinpi(double x) {
    const double n = std::round(x);
    const double r = x - n;
    const double s = std::sin(kPi * r);
    return (static_cast<long long>(n) & 1LL) ? -s : s;
}

double cospi(double x) {
    const double n = std::round(x);
    const double r = x - n;
    const double c = std::cos(kPi * r);
    return (static_cast<long long>(n) & 1LL) ? -c : c;
}

double gamma(double x) {
    if (!std::isfinite(x)) throw std::domain_error("gamma: non-finite argument");
    if (is_nonpositive_integer(x))
        throw std::domain_error("gamma: pole at nonpositive integer " + std::to_string(x));
    if (x < 0.5) return kPi / (sinpi(x) * gamma_lanczos(1.0 - x));
    return gamma_lanczos(x);
}

double reciprocal_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x < 0.5) return sinpi(x) * gamma_lanczos(1.0 - x) / kPi;
    return 1.0 / gamma_lanczos(x);
}

double log_abs_gamma(double x) {
    if (is_nonpositive_integer(x)) return std::numeric_limits<double>::infinity();
    if (x < 0.5) return std::log(kPi / std::abs(sinpi(x))) - log_gamma_lanczos(1.0 - x);
    return log_gamma_lanczos(x);
}

double erfc(double x) {
    return std::erfc(x);
}

SeriesValue mainardi_m(double z, double nu, const SeriesControl& ctrl) {
    if (!(nu > 0.0 && nu < 1.0)) throw std::domain_error("mainardi_m: nu must lie in (0,1)");
    if (!(z >= 0.0)) throw std::domain_error("mainardi_m: z must be >= 0");
    SeriesTermGen gen{z, z > 0.0 ? -1 : 0, -nu, 1.0 - nu};
    return sum_series(gen, ctrl, "mainardi_m");
}

SeriesValue wright_w(double z, double alpha, double beta, const SeriesControl& ctrl) {
    if (!(alpha > -1.0)) throw std::domain_error("wright_w: alpha must be > -1");
    int sign_z = (z > 0.0) ? 1 : (z < 0.0 ? -1 : 0);
    SeriesTermGen gen{std::abs(z), sign_z, alpha, beta};
    return sum_series(gen, ctrl, "wright_w");
}

}  // namespace fracwave
