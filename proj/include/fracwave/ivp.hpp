#pragma once

#include "fracwave/aux_kernel.hpp"
#include "fracwave/data_function.hpp"
#include "fracwave/solution_field.hpp"

#include <optional>

namespace fracwave {

enum class DerivativeKind { caputo, riemann_liouville };

/// Whole-line problem D^{2 nu} u = kappa u_xx + F(x,t) with the regime-matched
/// initial data: one datum f for nu <= 1/2, a pair (f, g) for nu > 1/2.
/// Forcing, when present, is separable: F(x,t) = forcing_space(x) * forcing_time(t).
struct IvpSpec {
    DerivativeKind kind = DerivativeKind::caputo;
    double nu = 0.5;
    double kappa = 1.0;
    DataFunction f;
    std::optional<DataFunction> g;
    std::optional<DataFunction> forcing_space;
    std::optional<DataFunction> forcing_time;

    bool wave_regime() const { return nu > 0.5; }
    void validate() const;
};

struct QuadratureControl {
    int space_points = 257;   // composite-Simpson budget per convolution
    int time_steps = 64;      // trapezoid steps for the forcing convolution
    double tol = 1e-8;        // adaptive tolerance where applicable
    double boundary_check_tol = 1e-3;  // IBVP Dirichlet validation (0 disables)
};

enum class GreenKernel {
    caputo_diff,
    caputo_wave_f,
    caputo_wave_g,
    rl_diff,
    rl_wave_f,
    rl_wave_g,
    forcing
};

/// One Green's-function kernel evaluation, (1/(2 sqrt(kappa))) * K(|x-xi|/sqrt(kappa), t).
/// K is the parameter-matched member of the R family; rl_wave_f differentiates
/// R in time by a central difference with step max(1e-4, 1e-3 t).
double green_kernel(GreenKernel which, double x, double xi, double t, double nu, double kappa,
                    const InversionControl& ictrl = {});

/// Cross-check path for the rl_wave_f kernel: direct inversion of the
/// s-multiplied transform instead of numerical time differentiation.
double green_kernel_rl_wave_f_direct(double x, double xi, double t, double nu, double kappa,
                                     const InversionControl& ictrl = {});

/// Green's-function convolution solution of the IVP on the grid xs x ts.
SolutionField solve_ivp(const IvpSpec& spec, const Eigen::Ref<const Eigen::ArrayXd>& xs,
                        const Eigen::Ref<const Eigen::ArrayXd>& ts,
                        const QuadratureControl& qctrl = {}, const InversionControl& ictrl = {});

namespace detail {

/// Spatial data prepared for kernel convolution: a pointwise part with
/// quadrature breakpoints plus any point masses.
struct SpatialData {
    std::function<double(double)> eval;
    std::vector<double> breaks;  // sorted; empty when there is no pointwise part
    std::vector<std::pair<double, double>> diracs;  // (center, weight)
};

SpatialData make_spatial_data(const DataFunction& f);

double convolve_kernel(GreenKernel which, double x, double t, const SpatialData& data, double nu,
                       double kappa, int space_points, const InversionControl& ictrl);

}  // namespace detail

}  // namespace fracwave
