#include "fracwave/fractional_calculus.hpp"
#include "fracwave/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracwave {

void TimeGrid::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid.dt must be > 0");
    if (n < 1) throw std::invalid_argument("TimeGrid.n must be >= 1");
}

void SampledFn::validate(bool require_finite) const {
    grid.validate();
    if (values.size() != grid.samples())
        throw std::invalid_argument("SampledFn: values length must be n+1");
    if (require_finite && !values.isFinite().all())
        throw std::invalid_argument("SampledFn: values must be finite");
}

SampledFn rl_integral(const SampledFn& y, double order) {
    y.validate();
    if (!(order > 0.0)) throw std::invalid_argument("rl_integral: order must be > 0");
    const Eigen::Index n = y.grid.n;
    const double nu = order;
    const double c = std::pow(y.grid.dt, nu) / gamma(nu + 2.0);

    // Toeplitz interior weights a_m = (m+1)^{nu+1} - 2 m^{nu+1} + (m-1)^{nu+1}.
    Eigen::ArrayXd pw(n + 2);
    for (Eigen::Index m = 0; m <= n + 1; ++m)
        pw[m] = std::pow(static_cast<double>(m), nu + 1.0);
    Eigen::ArrayXd a(n + 1);
    a[0] = 0.0;  // unused
    for (Eigen::Index m = 1; m <= n; ++m) a[m] = pw[m + 1] - 2.0 * pw[m] + pw[m - 1];

    SampledFn out;
    out.grid = y.grid;
    out.values = Eigen::ArrayXd::Zero(n + 1);
    for (Eigen::Index k = 1; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        double acc = (pw[k - 1] - std::pow(kk, nu) * (kk - nu - 1.0)) * y.values[0];
        for (Eigen::Index i = 1; i < k; ++i) acc += a[k - i] * y.values[i];
        acc += y.values[k];
        out.values[k] = c * acc;
    }
    return out;
}

SampledFn caputo_derivative(const SampledFn& y, double order) {
    y.validate();
    if (!(order > 0.0 && order <= 1.0))
        throw std::invalid_argument("caputo_derivative: order must be in (0,1]");
    const Eigen::Index n = y.grid.n;
    if (order == 1.0) {  // plain backward differences
        SampledFn out;
        out.grid = y.grid;
        out.values = Eigen::ArrayXd::Zero(n + 1);
        out.values.tail(n) = (y.values.tail(n) - y.values.head(n)) / y.grid.dt;
        return out;
    }
    const double nu = order;
    const double c = std::pow(y.grid.dt, -nu) / gamma(2.0 - nu);

    Eigen::ArrayXd b(n);
    for (Eigen::Index j = 0; j < n; ++j)
        b[j] = std::pow(static_cast<double>(j + 1), 1.0 - nu) -
               std::pow(static_cast<double>(j), 1.0 - nu);

    Eigen::ArrayXd dy = y.values.tail(n) - y.values.head(n);  // dy[i] = y_{i+1} - y_i

    SampledFn out;
    out.grid = y.grid;
    out.values = Eigen::ArrayXd::Zero(n + 1);
    for (Eigen::Index k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) acc += b[j] * dy[k - 1 - j];
        out.values[k] = c * acc;
    }
    return out;
}

SampledFn rl_derivative(const SampledFn& y, double order) {
    SampledFn out = caputo_derivative(y, order);
    const double y0 = y.values[0];
    if (y0 == 0.0 || order == 1.0) return out;
    const double g = gamma(1.0 - order);
    for (Eigen::Index k = 1; k <= y.grid.n; ++k)
        out.values[k] += y0 * std::pow(y.grid.time(k), -order) / g;
    out.values[0] = (y0 > 0.0 ? 1.0 : -1.0) * std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace fracwave
