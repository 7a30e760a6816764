#include "fracwave/ivp.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracwave {

namespace {

constexpr double kCollapsedA = 1e-12;  // below this, use the a -> 0+ kernel limit

double kernel_mu(GreenKernel which, double nu) {
    switch (which) {
        case GreenKernel::caputo_diff:
        case GreenKernel::caputo_wave_f: return 1.0 - nu;
        case GreenKernel::caputo_wave_g: return 2.0 - nu;
        case GreenKernel::rl_diff:
        case GreenKernel::rl_wave_g:
        case GreenKernel::forcing: return nu;
        case GreenKernel::rl_wave_f: return nu;  // differentiated in time below
    }
    return nu;
}

// a -> 0+ limit of R_{mu,nu}(a,t) is t^{mu-1}/Gamma(mu) for mu > 0.
double kernel_limit_a0(double mu, double t) {
    return std::pow(t, mu - 1.0) / gamma(mu);
}

}  // namespace

void IvpSpec::validate() const {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("IvpSpec: nu must be in (0,1]");
    if (!(kappa > 0.0)) throw std::invalid_argument("IvpSpec: kappa must be > 0");
    if (wave_regime() && !g.has_value())
        throw std::invalid_argument("IvpSpec: nu > 1/2 requires the second datum g");
    if (!wave_regime() && g.has_value())
        throw std::invalid_argument("IvpSpec: g is only admissible for nu > 1/2");
    if (forcing_space.has_value() != forcing_time.has_value())
        throw std::invalid_argument("IvpSpec: separable forcing needs both factors");
    if (kind == DerivativeKind::riemann_liouville && nu == 1.0)
        throw std::invalid_argument(
            "IvpSpec: Riemann-Liouville with nu = 1 is out of scope (distributional data)");
    if (nu == 1.0 && f.is_dirac())
        throw std::invalid_argument("IvpSpec: dirac f at nu = 1 is distributional");
}

double green_kernel(GreenKernel which, double x, double xi, double t, double nu, double kappa,
                    const InversionControl& ictrl) {
    if (!(t > 0.0)) throw std::domain_error("green_kernel: t must be > 0");
    if (!(kappa > 0.0)) throw std::domain_error("green_kernel: kappa must be > 0");
    const double sk = std::sqrt(kappa);
    const double a = std::abs(x - xi) / sk;
    const double mu = kernel_mu(which, nu);
    const double front = 1.0 / (2.0 * sk);

    if (which == GreenKernel::rl_wave_f) {
        // D^1 R_{nu,nu}(a, t) by central difference
        double h = std::max(1e-4, 1e-3 * t);
        if (h >= t) h = 0.5 * t;
        if (a < kCollapsedA) {
            return front * (kernel_limit_a0(nu, t + h) - kernel_limit_a0(nu, t - h)) / (2.0 * h);
        }
        const AuxParams p{nu, nu, a};
        return front * (aux_eval_value(p, t + h, ictrl) - aux_eval_value(p, t - h, ictrl)) /
               (2.0 * h);
    }

    if (nu == 1.0 && mu <= 0.0)
        throw std::domain_error("green_kernel: Dirac kernel at nu = 1; handled by the solver");
    if (a < kCollapsedA) return front * kernel_limit_a0(mu, t);
    return front * aux_eval_value(AuxParams{mu, nu, a}, t, ictrl);
}

double green_kernel_rl_wave_f_direct(double x, double xi, double t, double nu, double kappa,
                                     const InversionControl& ictrl) {
    const double sk = std::sqrt(kappa);
    const double a = std::abs(x - xi) / sk;
    if (a < kCollapsedA) {
        const double h = std::max(1e-4, 1e-3 * t);
        return (kernel_limit_a0(nu, t + h) - kernel_limit_a0(nu, t - h)) / (2.0 * h * 2.0 * sk);
    }
    InversionControl c = ictrl;
    c.method = InversionControl::Method::talbot;
    // transform s^{1-nu} exp(-a s^nu); same saddle as the undifferentiated kernel
    const double sstar = std::pow(a * nu / t, 1.0 / (1.0 - nu));
    if (sstar * t - a * std::pow(sstar, nu) < -745.0) return 0.0;
    c.nodes = std::clamp(
        std::max(ictrl.nodes, static_cast<int>(std::ceil(t * sstar / ictrl.scale)) + 16), 8, 4096);
    const double v = invert_log_transform(
        [a, nu](Complex s) {
            const Complex ls = std::log(s);
            return -a * std::exp(nu * ls) + (1.0 - nu) * ls;
        },
        t, c);
    return v / (2.0 * sk);
}

namespace detail {

SpatialData make_spatial_data(const DataFunction& f) {
    SpatialData d;
    if (f.is_zero()) return d;
    if (f.is_dirac()) {
        d.diracs.emplace_back(f.center(), f.weight());
        return d;
    }
    const Interval s = f.support();
    d.eval = [f](double x) { return f(x); };
    d.breaks = {s.lo, s.hi};
    return d;
}

double convolve_kernel(GreenKernel which, double x, double t, const SpatialData& data, double nu,
                       double kappa, int space_points, const InversionControl& ictrl) {
    double acc = 0.0;
    for (const auto& [c, w] : data.diracs)
        acc += w * green_kernel(which, x, c, t, nu, kappa, ictrl);
    if (!data.eval) return acc;

    // split at the |x - xi| kink (and any data breakpoints)
    std::vector<double> breaks = data.breaks;
    if (x > breaks.front() && x < breaks.back()) {
        breaks.push_back(x);
        std::sort(breaks.begin(), breaks.end());
    }
    auto integrand = [&](double xi) {
        return green_kernel(which, x, xi, t, nu, kappa, ictrl) * data.eval(xi);
    };
    acc += integrate_piecewise(integrand, breaks, space_points);
    return acc;
}

}  // namespace detail

namespace {

// d'Alembert route for nu = 1 (Caputo): Dirac and Heaviside kernels are applied
// exactly instead of numerically.
double solve_point_wave_limit(const IvpSpec& spec, double x, double t,
                              const QuadratureControl& qctrl) {
    const double c = std::sqrt(spec.kappa);
    double u = 0.5 * (spec.f(x - c * t) + spec.f(x + c * t));
    if (spec.g && !spec.g->is_zero()) {
        if (spec.g->is_dirac()) {
            const double ctr = spec.g->center();
            if (ctr > x - c * t && ctr < x + c * t) u += spec.g->weight() / (2.0 * c);
        } else {
            u += spec.g->integral(x - c * t, x + c * t) / (2.0 * c);
        }
    }
    if (spec.forcing_space && !spec.forcing_space->is_zero()) {
        const DataFunction& fx = *spec.forcing_space;
        const DataFunction& ft = *spec.forcing_time;
        const int m = std::max(qctrl.time_steps, 2);
        const double dtau = t / m;
        double conv = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double tau = i * dtau;
            const double radius = c * (t - tau);
            double inner;
            if (fx.is_dirac())
                inner = (fx.center() > x - radius && fx.center() < x + radius) ? fx.weight() : 0.0;
            else
                inner = fx.integral(x - radius, x + radius);
            const double w = (i == 0 || i == m) ? 0.5 : 1.0;
            conv += w * ft(tau) * inner;
        }
        u += conv * dtau / (2.0 * c);
    }
    return u;
}

double solve_point(const IvpSpec& spec, const detail::SpatialData& fdata,
                   const detail::SpatialData& gdata, double x, double t,
                   const QuadratureControl& qctrl, const InversionControl& ictrl) {
    if (spec.nu == 1.0) return solve_point_wave_limit(spec, x, t, qctrl);

    const bool caputo = spec.kind == DerivativeKind::caputo;
    const GreenKernel fker = caputo
                                 ? (spec.wave_regime() ? GreenKernel::caputo_wave_f
                                                       : GreenKernel::caputo_diff)
                                 : (spec.wave_regime() ? GreenKernel::rl_wave_f
                                                       : GreenKernel::rl_diff);
    double u = detail::convolve_kernel(fker, x, t, fdata, spec.nu, spec.kappa,
                                       qctrl.space_points, ictrl);
    if (spec.wave_regime()) {
        const GreenKernel gker = caputo ? GreenKernel::caputo_wave_g : GreenKernel::rl_wave_g;
        u += detail::convolve_kernel(gker, x, t, gdata, spec.nu, spec.kappa, qctrl.space_points,
                                     ictrl);
    }
    if (spec.forcing_space && !spec.forcing_space->is_zero()) {
        const detail::SpatialData fx = detail::make_spatial_data(*spec.forcing_space);
        const DataFunction& ft = *spec.forcing_time;
        const int m = std::max(qctrl.time_steps, 2);
        const double dtau = t / m;
        double conv = 0.0;
        for (int i = 0; i < m; ++i) {  // kernel vanishes at tau = t, endpoint drops
            const double tau = i * dtau;
            const double w = (i == 0) ? 0.5 : 1.0;
            conv += w * ft(tau) *
                    detail::convolve_kernel(GreenKernel::forcing, x, t - tau, fx, spec.nu,
                                            spec.kappa, qctrl.space_points, ictrl);
        }
        u += conv * dtau;
    }
    return u;
}

}  // namespace

SolutionField solve_ivp(const IvpSpec& spec, const Eigen::Ref<const Eigen::ArrayXd>& xs,
                        const Eigen::Ref<const Eigen::ArrayXd>& ts,
                        const QuadratureControl& qctrl, const InversionControl& ictrl) {
    spec.validate();
    if (xs.size() == 0 || ts.size() == 0)
        throw std::invalid_argument("solve_ivp: empty evaluation grid");
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        if (!(ts[i] > 0.0)) throw std::invalid_argument("solve_ivp: times must be > 0");

    const detail::SpatialData fdata = detail::make_spatial_data(spec.f);
    const detail::SpatialData gdata =
        spec.g ? detail::make_spatial_data(*spec.g) : detail::SpatialData{};

    SolutionField field;
    field.xs = xs;
    field.ts = ts;
    field.u.resize(ts.size(), xs.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        for (Eigen::Index j = 0; j < xs.size(); ++j)
            field.u(i, j) = solve_point(spec, fdata, gdata, xs[j], ts[i], qctrl, ictrl);

    field.meta.method = "green_convolution";
    field.meta.space_points = qctrl.space_points;
    field.meta.time_steps = qctrl.time_steps;
    field.meta.inversion_nodes = ictrl.nodes;
    field.meta.tol = qctrl.tol;
    return field;
}

void SolutionField::validate() const {
    if (u.rows() != ts.size() || u.cols() != xs.size())
        throw std::invalid_argument("SolutionField: inconsistent dimensions");
    if (!u.array().isFinite().all())
        throw std::invalid_argument("SolutionField: non-finite values");
}

}  // namespace fracwave
