#pragma once

#include "fracwave/ibvp.hpp"
#include "fracwave/ivp.hpp"
#include "fracwave/solution_field.hpp"

namespace fracwave {

/// Configuration of the validation time-stepper. Explicit schemes only; the
/// conservative stability requirement kappa dt^{2 nu} / dx^2 <= 1/2 is
/// enforced when the problem (and hence nu) is known.
struct FdConfig {
    double half_width = 10.0;  // whole-line domain [-L, L]; half-line [0, L]
    Eigen::Index nx = 201;
    double dt = 1e-3;
    Eigen::Index nt = 1000;
    enum class Scheme { l1_caputo, gl_riemann_liouville } scheme = Scheme::l1_caputo;

    void validate() const;
};

/// Direct time-stepping of the whole-line problem. The Caputo operator uses
/// the L1 memory form (split through the first derivative for nu > 1/2); the
/// Riemann-Liouville operator uses Grunwald-Letnikov weights on the regular
/// part after peeling off the t^{2 nu - 1} mode carrying the initial datum.
/// Full history is kept (O(nt^2) work): this is a desk-scale oracle.
SolutionField fd_solve(const IvpSpec& spec, const FdConfig& cfg);

/// Half-line variant with the Dirichlet value imposed at x = 0 and a truncated
/// zero far boundary. Caputo schemes only.
SolutionField fd_solve(const IbvpSpec& spec, const FdConfig& cfg);

}  // namespace fracwave
