#pragma once

#include "fracwave/ivp.hpp"

namespace fracwave {

enum class Extension { zero, even, odd };

/// Half-line Dirichlet problem: D^{2 nu} u = kappa u_xx on x > 0 with the
/// regime-matched initial data on x >= 0 and u(0+, t) = h(t). Solved by
/// embedding into a forced whole-line problem; the embedding extension of the
/// initial data does not affect the restricted solution.
struct IbvpSpec {
    DerivativeKind kind = DerivativeKind::caputo;
    double nu = 0.5;
    double kappa = 1.0;
    DataFunction f;
    std::optional<DataFunction> g;
    DataFunction h;
    Extension extension = Extension::zero;

    bool wave_regime() const { return nu > 0.5; }
    void validate() const;
};

/// Cauchy / signalling fundamental solutions sampled on a grid:
///   gs(x,t) = R_{0,nu}(x/sqrt(kappa), t),
///   gc(x,t) = (1/(2 sqrt(kappa))) R_{1-nu,nu}(|x|/sqrt(kappa), t).
struct FundamentalSolutions {
    Eigen::ArrayXd xs;
    Eigen::ArrayXd ts;
    Eigen::MatrixXd gc;
    Eigen::MatrixXd gs;
};

enum class IbvpPath {
    laplace_matching,  // default: boundary matching in transform space
    time_domain        // explicit forcing amplitude; constant h, zero data only
};

/// Whole-line solution u0 of the embedded problem, restricted to x >= 0.
SolutionField embed_u0(const IbvpSpec& spec, const Eigen::Ref<const Eigen::ArrayXd>& xs,
                       const Eigen::Ref<const Eigen::ArrayXd>& ts,
                       const QuadratureControl& qctrl = {}, const InversionControl& ictrl = {});

/// Full IBVP solution on x > 0. The default path assembles
///   u = u0 + Linv{ [h^ - u0^(0+,.)] exp(-(x/sqrt(kappa)) s^nu) }
/// term by term through the convolution theorem (boundary responses are exact
/// kernel shifts). Throws ToleranceError when the solved field misses the
/// Dirichlet value at the validation points.
SolutionField solve_ibvp(const IbvpSpec& spec, const Eigen::Ref<const Eigen::ArrayXd>& xs,
                         const Eigen::Ref<const Eigen::ArrayXd>& ts,
                         const QuadratureControl& qctrl = {}, const InversionControl& ictrl = {},
                         IbvpPath path = IbvpPath::laplace_matching);

/// Fundamental solution pair on a grid of x > 0, t > 0; requires nu in (0,1).
FundamentalSolutions fundamental_pair(double nu, double kappa,
                                      const Eigen::Ref<const Eigen::ArrayXd>& xs,
                                      const Eigen::Ref<const Eigen::ArrayXd>& ts,
                                      const InversionControl& ictrl = {});

/// Exact boundary response Linv{ h^(s) exp(-b s^nu) }(t) for data kinds with a
/// closed transform; b = x/sqrt(kappa). Piecewise-polynomial h reduces to
/// time-shifted members of the R family.
double boundary_response(const DataFunction& h, double b, double nu, double t,
                         const InversionControl& ictrl = {});

}  // namespace fracwave
