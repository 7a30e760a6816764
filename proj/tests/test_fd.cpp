#include "doctest.h"

#include "fracwave/errors.hpp"
#include "fracwave/fd_solver.hpp"

#include <cmath>

using namespace fracwave;

namespace {

Eigen::Index nearest(const Eigen::ArrayXd& grid, double v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - v) < std::abs(grid[best] - v)) best = i;
    return best;
}

double heat_ref(double x, double t) {
    return std::exp(-x * x / (1.0 + 4.0 * t)) / std::sqrt(1.0 + 4.0 * t);
}

}  // namespace

TEST_CASE("classical heat equation, both schemes") {
    IvpSpec spec;
    spec.nu = 0.5;
    spec.kappa = 1.0;
    spec.f = DataFunction::gaussian(0.0, 1.0, 1.0);

    FdConfig cfg;
    cfg.half_width = 10.0;
    cfg.nx = 401;
    cfg.dt = 1e-4;
    cfg.nt = 10000;  // t = 1

    SUBCASE("L1 Caputo") {
        spec.kind = DerivativeKind::caputo;
        cfg.scheme = FdConfig::Scheme::l1_caputo;
    }
    SUBCASE("Grunwald-Letnikov Riemann-Liouville") {
        spec.kind = DerivativeKind::riemann_liouville;
        cfg.scheme = FdConfig::Scheme::gl_riemann_liouville;
    }

    const SolutionField u = fd_solve(spec, cfg);
    const Eigen::Index it = u.ts.size() - 1;
    for (double x : {0.0, 0.5, 1.0, 2.0}) {
        const Eigen::Index j = nearest(u.xs, x);
        const double ref = heat_ref(u.xs[j], u.ts[it]);
        CHECK(std::abs(u.u(it, j) - ref) <= 0.01 * std::abs(ref));
    }
}

TEST_CASE("wave limit: d'Alembert within 2% in the interior") {
    IvpSpec spec;
    spec.kind = DerivativeKind::caputo;
    spec.nu = 1.0;
    spec.kappa = 1.0;
    const Eigen::Index n = 4801;
    Eigen::ArrayXd txs = Eigen::ArrayXd::LinSpaced(n, -12.0, 12.0);
    spec.f = DataFunction::table(txs, txs.sin());
    spec.g = DataFunction::zero();

    FdConfig cfg;
    cfg.half_width = 10.0;
    cfg.nx = 801;
    cfg.dt = 2e-3;
    cfg.nt = 500;  // t = 1
    const SolutionField u = fd_solve(spec, cfg);
    const Eigen::Index it = u.ts.size() - 1;
    for (double x : {-1.0, 0.0, 0.7, 2.0}) {
        const Eigen::Index j = nearest(u.xs, x);
        const double ref = 0.5 * (std::sin(u.xs[j] - 1.0) + std::sin(u.xs[j] + 1.0));
        CHECK(std::abs(u.u(it, j) - ref) <= 0.02);
    }
}

TEST_CASE("zero data stays zero") {
    IvpSpec spec;
    spec.kind = DerivativeKind::caputo;
    spec.nu = 0.4;
    spec.f = DataFunction::zero();
    FdConfig cfg;
    cfg.nx = 41;
    cfg.dt = 1e-3;
    cfg.nt = 50;
    const SolutionField u = fd_solve(spec, cfg);
    CHECK((u.u.array() == 0.0).all());
}

TEST_CASE("half-line step heating matches erfc") {
    IbvpSpec spec;
    spec.kind = DerivativeKind::caputo;
    spec.nu = 0.5;
    spec.kappa = 1.0;
    spec.f = DataFunction::zero();
    spec.h = DataFunction::indicator(0.0, DataFunction::inf, 1.0);

    FdConfig cfg;
    cfg.half_width = 12.0;
    cfg.nx = 481;
    cfg.dt = 2e-4;
    cfg.nt = 5000;  // t = 1
    const SolutionField u = fd_solve(spec, cfg);
    const Eigen::Index it = u.ts.size() - 1;
    for (double x : {0.25, 0.5, 1.0, 2.0}) {
        const Eigen::Index j = nearest(u.xs, x);
        const double ref = std::erfc(u.xs[j] / 2.0);
        CHECK(std::abs(u.u(it, j) - ref) <= 0.01);
    }
}

TEST_CASE("stability guard") {
    IvpSpec spec;
    spec.kind = DerivativeKind::caputo;
    spec.nu = 0.5;
    spec.f = DataFunction::gaussian(0.0, 1.0, 1.0);
    FdConfig cfg;
    cfg.nx = 201;
    cfg.half_width = 1.0;  // dx = 0.01
    cfg.dt = 1e-3;         // kappa dt / dx^2 = 10
    cfg.nt = 10;
    CHECK_THROWS_AS(fd_solve(spec, cfg), StabilityError);
}

TEST_CASE("scheme/regime mismatches are rejected") {
    IvpSpec rl_wave;
    rl_wave.kind = DerivativeKind::riemann_liouville;
    rl_wave.nu = 0.7;
    rl_wave.f = DataFunction::gaussian(0.0, 1.0, 1.0);
    rl_wave.g = DataFunction::zero();
    FdConfig cfg;
    cfg.scheme = FdConfig::Scheme::gl_riemann_liouville;
    cfg.dt = 1e-2;
    cfg.nt = 10;
    CHECK_THROWS_AS(fd_solve(rl_wave, cfg), std::invalid_argument);

    IvpSpec caputo;
    caputo.kind = DerivativeKind::caputo;
    caputo.nu = 0.4;
    caputo.f = DataFunction::gaussian(0.0, 1.0, 1.0);
    CHECK_THROWS_AS(fd_solve(caputo, cfg), std::invalid_argument);  // wrong scheme
}

TEST_CASE("RL diffusion: GL stepping matches the kernel solution") {
    IvpSpec spec;
    spec.kind = DerivativeKind::riemann_liouville;
    spec.nu = 0.4;
    spec.kappa = 1.0;
    spec.f = DataFunction::gaussian(0.0, 1.0, 1.0);

    FdConfig cfg;
    cfg.scheme = FdConfig::Scheme::gl_riemann_liouville;
    cfg.half_width = 10.0;
    cfg.nx = 201;
    cfg.dt = 5e-4;
    cfg.nt = 2000;  // t = 1

    const SolutionField fd = fd_solve(spec, cfg);
    Eigen::ArrayXd xs(3), ts(1);
    xs << 0.0, 0.5, 1.0;
    ts << 1.0;
    const SolutionField ref = solve_ivp(spec, xs, ts);
    const Eigen::Index it = fd.ts.size() - 1;
    double scale = ref.u.array().abs().maxCoeff();
    for (Eigen::Index j = 0; j < xs.size(); ++j) {
        const Eigen::Index jj = nearest(fd.xs, xs[j]);
        CHECK(std::abs(fd.u(it, jj) - ref.u(0, j)) <= 0.03 * scale);
    }
}
