#include "fracwave/laplace_inversion.hpp"
#include "fracwave/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_finite(Complex v, Complex s) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw EvaluationError("invert: transform returned a non-finite value at s = (" +
                              std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
}

void validate(const InversionControl& ctrl) {
    if (!(ctrl.scale > 0.0)) throw std::invalid_argument("InversionControl.scale must be > 0");
    if (ctrl.method == InversionControl::Method::talbot) {
        if (ctrl.nodes < 8) throw std::invalid_argument("talbot requires nodes >= 8");
    } else {
        if (ctrl.nodes < 4 || ctrl.nodes > 20 || (ctrl.nodes % 2) != 0)
            throw std::invalid_argument("gaver_stehfest requires an even node count in [4, 20]");
    }
}

// Fixed-Talbot rule: the Bromwich contour is deformed onto
// s(theta) = r*theta*(cot(theta) + i), theta in (-pi, pi), with r = scale*M/t.
// Conjugate symmetry of real-valued transforms halves the sum.
double invert_talbot(const TransformEvaluator& fhat, double t, int nodes, double scale) {
    const int M = nodes;
    const double r = scale * M / t;
    Complex s0(r, 0.0);
    Complex f0 = fhat(s0);
    check_finite(f0, s0);
    double sum = 0.5 * f0.real() * std::exp(r * t);
    for (int k = 1; k < M; ++k) {
        const double theta = k * kPi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const Complex s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        Complex fv = fhat(s);
        check_finite(fv, s);
        sum += std::real(std::exp(s * t) * fv * Complex(1.0, sigma));
    }
    return sum * r / M;
}

double invert_talbot_log(const TransformEvaluator& log_fhat, double t, int nodes, double scale) {
    const int M = nodes;
    const double r = scale * M / t;
    const Complex s0(r, 0.0);
    Complex w0 = log_fhat(s0);
    check_finite(w0, s0);
    if (w0.real() + r * t > 705.0)
        throw EvaluationError("invert_log_transform: contour integrand overflows");
    double sum = 0.5 * std::real(std::exp(w0 + r * t));
    for (int k = 1; k < M; ++k) {
        const double theta = k * kPi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const Complex s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        Complex w = log_fhat(s);
        check_finite(w, s);
        const Complex e = s * t + w;
        if (e.real() > 705.0)
            throw EvaluationError("invert_log_transform: contour integrand overflows");
        sum += std::real(std::exp(e) * Complex(1.0, sigma));
    }
    return sum * r / M;
}

double invert_stehfest(const TransformEvaluator& fhat, double t, int nodes) {
    static const double ln2 = std::log(2.0);
    const std::vector<double> w = stehfest_weights(nodes);
    double sum = 0.0;
    for (int k = 1; k <= nodes; ++k) {
        const Complex s(k * ln2 / t, 0.0);
        Complex fv = fhat(s);
        check_finite(fv, s);
        sum += w[k - 1] * fv.real();
    }
    return sum * ln2 / t;
}

}  // namespace

std::vector<double> stehfest_weights(int n) {
    if (n < 2 || (n % 2) != 0) throw std::invalid_argument("stehfest_weights: n must be even");
    const int half = n / 2;
    auto fact = [](int m) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    std::vector<double> w(n, 0.0);
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        const int j_lo = (k + 1) / 2;
        const int j_hi = std::min(k, half);
        for (int j = j_lo; j <= j_hi; ++j) {
            acc += std::pow(static_cast<double>(j), half) * fact(2 * j) /
                   (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        w[k - 1] = (((k + half) % 2) ? -1.0 : 1.0) * acc;
    }
    return w;
}

double invert(const TransformEvaluator& fhat, double t, const InversionControl& ctrl) {
    if (!(t > 0.0)) throw std::invalid_argument("invert: t must be > 0");
    validate(ctrl);
    if (ctrl.method == InversionControl::Method::talbot)
        return invert_talbot(fhat, t, ctrl.nodes, ctrl.scale);
    return invert_stehfest(fhat, t, ctrl.nodes);
}

double invert_log_transform(const TransformEvaluator& log_fhat, double t,
                            const InversionControl& ctrl) {
    if (!(t > 0.0)) throw std::invalid_argument("invert_log_transform: t must be > 0");
    if (ctrl.method != InversionControl::Method::talbot)
        throw std::invalid_argument("invert_log_transform: talbot only");
    validate(ctrl);
    return invert_talbot_log(log_fhat, t, ctrl.nodes, ctrl.scale);
}

Eigen::ArrayXd invert_grid(const TransformEvaluator& fhat,
                           const Eigen::Ref<const Eigen::ArrayXd>& ts,
                           const InversionControl& ctrl) {
    if (ts.size() == 0) throw std::invalid_argument("invert_grid: empty time grid");
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        if (!(ts[i] > 0.0)) throw std::invalid_argument("invert_grid: times must be > 0");
        if (i > 0 && !(ts[i] > ts[i - 1]))
            throw std::invalid_argument("invert_grid: times must be strictly increasing");
    }
    Eigen::ArrayXd out(ts.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i) out[i] = invert(fhat, ts[i], ctrl);
    return out;
}

}  // namespace fracwave
