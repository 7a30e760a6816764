#include "fracwave/fd_solver.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracwave {

namespace {

using Levels = std::vector<Eigen::ArrayXd>;  // u[n] is the solution at t_n

void check_stability(double nu, double kappa, double dt, double dx) {
    const double ratio = kappa * std::pow(dt, 2.0 * nu) / (dx * dx);
    if (ratio > 0.5)
        throw StabilityError("fd_solve: kappa dt^{2nu}/dx^2 = " + std::to_string(ratio) +
                             " exceeds the conservative bound 1/2");
}

Eigen::ArrayXd l1_weights(double alpha, Eigen::Index n) {
    Eigen::ArrayXd b(n);
    for (Eigen::Index j = 0; j < n; ++j)
        b[j] = std::pow(static_cast<double>(j + 1), 1.0 - alpha) -
               std::pow(static_cast<double>(j), 1.0 - alpha);
    return b;
}

Eigen::ArrayXd gl_weights(double alpha, Eigen::Index n) {
    Eigen::ArrayXd w(n + 1);
    w[0] = 1.0;
    for (Eigen::Index j = 1; j <= n; ++j)
        w[j] = w[j - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(j));
    return w;
}

Eigen::ArrayXd second_difference(const Eigen::ArrayXd& u, double dx) {
    const Eigen::Index n = u.size();
    Eigen::ArrayXd d = Eigen::ArrayXd::Zero(n);
    d.segment(1, n - 2) =
        (u.segment(2, n - 2) - 2.0 * u.segment(1, n - 2) + u.segment(0, n - 2)) / (dx * dx);
    return d;
}

Eigen::ArrayXd eval_on_grid(const DataFunction& f, const Eigen::ArrayXd& x) {
    Eigen::ArrayXd v(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) v[j] = f(x[j]);
    return v;
}

// Caputo explicit stepping: L1 memory form for alpha <= 1; for alpha > 1 the
// first-derivative split u_t = v with the order alpha-1 operator acting on v.
template <typename Rhs, typename Bc>
void step_caputo(Levels& u, const Eigen::ArrayXd& x, const IvpSpec& spec,
                 const FdConfig& cfg, const Rhs& rhs, const Bc& apply_bc) {
    const double alpha = 2.0 * spec.nu;
    const Eigen::Index nt = cfg.nt;

    if (alpha <= 1.0) {
        const Eigen::ArrayXd b = l1_weights(alpha, nt);
        const double gain = gamma(2.0 - alpha) * std::pow(cfg.dt, alpha);
        for (Eigen::Index n = 0; n < nt; ++n) {
            Eigen::ArrayXd mem = Eigen::ArrayXd::Zero(x.size());
            for (Eigen::Index j = 1; j <= n; ++j) mem += b[j] * (u[n + 1 - j] - u[n - j]);
            Eigen::ArrayXd next = u[n] - mem + gain * rhs(n * cfg.dt, u[n]);
            apply_bc((n + 1) * cfg.dt, next);
            u[n + 1] = std::move(next);
        }
        return;
    }

    const double beta = alpha - 1.0;
    const Eigen::ArrayXd b = l1_weights(beta, nt);
    const double gain = (beta < 1.0) ? gamma(2.0 - beta) * std::pow(cfg.dt, beta) : cfg.dt;
    Levels v(nt + 1);
    v[0] = spec.g ? eval_on_grid(*spec.g, x) : Eigen::ArrayXd::Zero(x.size());
    for (Eigen::Index n = 0; n < nt; ++n) {
        Eigen::ArrayXd mem = Eigen::ArrayXd::Zero(x.size());
        if (beta < 1.0)
            for (Eigen::Index j = 1; j <= n; ++j) mem += b[j] * (v[n + 1 - j] - v[n - j]);
        v[n + 1] = v[n] - mem + gain * rhs(n * cfg.dt, u[n]);
        Eigen::ArrayXd next = u[n] + 0.5 * cfg.dt * (v[n] + v[n + 1]);
        apply_bc((n + 1) * cfg.dt, next);
        u[n + 1] = std::move(next);
    }
}

// Riemann-Liouville diffusion stepping on the regular remainder w, where
// u = w + f(x) t^{2nu-1}/Gamma(2nu). The peeled mode is annihilated by the
// derivative and contributes the source kappa f''(x) t^{2nu-1}/Gamma(2nu),
// taken as its panel average so the first step stays finite.
void step_gl(Levels& u, const Eigen::ArrayXd& x, double dx, const IvpSpec& spec,
             const FdConfig& cfg) {
    const double alpha = 2.0 * spec.nu;
    const Eigen::Index nt = cfg.nt;
    const Eigen::ArrayXd w = gl_weights(alpha, nt + 1);
    const double gain = std::pow(cfg.dt, alpha);

    Eigen::ArrayXd fxx(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) fxx[j] = spec.f.second_derivative(x[j]);
    const Eigen::ArrayXd fx = eval_on_grid(spec.f, x);

    const double g2n = gamma(alpha);
    auto mode = [&](double t) { return (t > 0.0) ? std::pow(t, alpha - 1.0) / g2n : 0.0; };
    auto mode_avg = [&](Eigen::Index n) {
        const double t1 = (n + 1) * cfg.dt, t0 = n * cfg.dt;
        return (std::pow(t1, alpha) - std::pow(t0, alpha)) / (gamma(alpha + 1.0) * cfg.dt);
    };

    Levels wlv(nt + 1, Eigen::ArrayXd::Zero(x.size()));
    for (Eigen::Index n = 0; n < nt; ++n) {
        Eigen::ArrayXd mem = Eigen::ArrayXd::Zero(x.size());
        for (Eigen::Index j = 1; j <= n + 1; ++j) mem += w[j] * wlv[n + 1 - j];
        Eigen::ArrayXd src =
            spec.kappa * second_difference(wlv[n], dx) + spec.kappa * fxx * mode_avg(n);
        if (spec.forcing_space)
            src += eval_on_grid(*spec.forcing_space, x) * (*spec.forcing_time)(n * cfg.dt);
        wlv[n + 1] = -mem + gain * src;
        wlv[n + 1][0] = 0.0;
        wlv[n + 1][x.size() - 1] = 0.0;
    }
    for (Eigen::Index n = 0; n <= nt; ++n) u[n] = wlv[n] + fx * mode(n * cfg.dt);
}

SolutionField collect(const Levels& u, const Eigen::ArrayXd& x, const FdConfig& cfg,
                      const std::string& method) {
    SolutionField field;
    field.xs = x;
    field.ts = Eigen::ArrayXd::LinSpaced(cfg.nt, cfg.dt, cfg.nt * cfg.dt);
    field.u.resize(cfg.nt, x.size());
    for (Eigen::Index n = 1; n <= cfg.nt; ++n) field.u.row(n - 1) = u[n].matrix().transpose();
    field.meta.method = method;
    field.meta.time_steps = static_cast<int>(cfg.nt);
    field.meta.space_points = static_cast<int>(cfg.nx);
    return field;
}

}  // namespace

void FdConfig::validate() const {
    if (!(half_width > 0.0)) throw std::invalid_argument("FdConfig: half_width must be > 0");
    if (nx < 3) throw std::invalid_argument("FdConfig: nx must be >= 3");
    if (!(dt > 0.0)) throw std::invalid_argument("FdConfig: dt must be > 0");
    if (nt < 1) throw std::invalid_argument("FdConfig: nt must be >= 1");
}

SolutionField fd_solve(const IvpSpec& spec, const FdConfig& cfg) {
    spec.validate();
    cfg.validate();
    const bool caputo_scheme = cfg.scheme == FdConfig::Scheme::l1_caputo;
    if (caputo_scheme != (spec.kind == DerivativeKind::caputo))
        throw std::invalid_argument("fd_solve: scheme does not match the derivative kind");
    if (!caputo_scheme && spec.wave_regime())
        throw std::invalid_argument(
            "fd_solve: Riemann-Liouville stepping covers the diffusion regime only");
    if (spec.f.is_dirac() || (spec.g && spec.g->is_dirac()))
        throw std::invalid_argument("fd_solve: point-mass data is not representable on the grid");

    const Eigen::ArrayXd x =
        Eigen::ArrayXd::LinSpaced(cfg.nx, -cfg.half_width, cfg.half_width);
    const double dx = x[1] - x[0];
    check_stability(spec.nu, spec.kappa, cfg.dt, dx);
    Levels u(cfg.nt + 1, Eigen::ArrayXd::Zero(cfg.nx));

    if (!caputo_scheme) {
        step_gl(u, x, dx, spec, cfg);
        return collect(u, x, cfg, "fd_gl");
    }

    u[0] = eval_on_grid(spec.f, x);
    auto rhs = [&](double t, const Eigen::ArrayXd& uu) {
        Eigen::ArrayXd r = spec.kappa * second_difference(uu, dx);
        if (spec.forcing_space)
            r += eval_on_grid(*spec.forcing_space, x) * (*spec.forcing_time)(t);
        return r;
    };
    auto bc = [&](double, Eigen::ArrayXd& uu) {
        uu[0] = 0.0;
        uu[uu.size() - 1] = 0.0;
    };
    step_caputo(u, x, spec, cfg, rhs, bc);
    return collect(u, x, cfg, "fd_l1");
}

SolutionField fd_solve(const IbvpSpec& spec, const FdConfig& cfg) {
    spec.validate();
    cfg.validate();
    if (cfg.scheme != FdConfig::Scheme::l1_caputo || spec.kind != DerivativeKind::caputo)
        throw std::invalid_argument("fd_solve: half-line stepping covers Caputo problems only");
    if (spec.f.is_dirac() || (spec.g && spec.g->is_dirac()) || spec.h.is_dirac())
        throw std::invalid_argument("fd_solve: point-mass data is not representable on the grid");

    const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(cfg.nx, 0.0, cfg.half_width);
    const double dx = x[1] - x[0];
    check_stability(spec.nu, spec.kappa, cfg.dt, dx);
    Levels u(cfg.nt + 1, Eigen::ArrayXd::Zero(cfg.nx));
    u[0] = eval_on_grid(spec.f, x);

    IvpSpec embedded;
    embedded.kind = spec.kind;
    embedded.nu = spec.nu;
    embedded.kappa = spec.kappa;
    embedded.f = spec.f;
    embedded.g = spec.g;

    auto rhs = [&](double, const Eigen::ArrayXd& uu) {
        return Eigen::ArrayXd(spec.kappa * second_difference(uu, dx));
    };
    auto bc = [&](double t, Eigen::ArrayXd& uu) {
        uu[0] = spec.h(t);
        uu[uu.size() - 1] = 0.0;
    };
    step_caputo(u, x, embedded, cfg, rhs, bc);
    return collect(u, x, cfg, "fd_l1_halfline");
}

}  // namespace fracwave
