#include "fracwave/ibvp.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/quadrature.hpp"
#include "fracwave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracwave {

namespace {

constexpr double kTinyA = 1e-12;

// R_{mu,nu}(b, t), with mu > 0 integer-or-real, tolerant of b -> 0+.
double kernel_b(double mu, double nu, double b, double t, const InversionControl& ictrl) {
    if (!(t > 0.0)) return 0.0;
    if (b < kTinyA) return std::pow(t, mu - 1.0) / gamma(mu);
    return aux_eval_value(AuxParams{mu, nu, b}, t, ictrl);
}

// D^1_t R_{nu,nu}(b, t) by central difference (R(.,0+) = 0 keeps this the
// inverse of s^{1-nu} e^{-b s^nu}).
double kernel_b_d1(double nu, double b, double t, const InversionControl& ictrl) {
    if (!(t > 0.0)) return 0.0;
    double h = std::max(1e-4, 1e-3 * t);
    if (h >= t) h = 0.5 * t;
    return (kernel_b(nu, nu, b, t + h, ictrl) - kernel_b(nu, nu, b, t - h, ictrl)) / (2.0 * h);
}

struct CaseKernels {
    double mu_f = 0.0;
    double mu_g = 0.0;
    bool f_differentiated = false;  // Riemann-Liouville wave: D^1 R_{nu,nu} for f
    bool has_g = false;
};

CaseKernels case_kernels(const IbvpSpec& s) {
    CaseKernels c;
    const bool caputo = s.kind == DerivativeKind::caputo;
    if (!s.wave_regime()) {
        c.mu_f = caputo ? 1.0 - s.nu : s.nu;
        return c;
    }
    c.has_g = true;
    if (caputo) {
        c.mu_f = 1.0 - s.nu;
        c.mu_g = 2.0 - s.nu;
    } else {
        c.mu_f = s.nu;
        c.f_differentiated = true;
        c.mu_g = s.nu;
    }
    return c;
}

// Extension of half-line data to the whole line for the embedding step.
detail::SpatialData extend_data(const DataFunction& f, Extension ext) {
    detail::SpatialData d;
    if (f.is_zero()) return d;
    if (f.is_dirac()) {
        d.diracs.emplace_back(f.center(), f.weight());
        if (ext != Extension::zero && f.center() > 0.0) {
            const double w = (ext == Extension::even) ? f.weight() : -f.weight();
            d.diracs.emplace_back(-f.center(), w);
        }
        return d;
    }
    const Interval s = f.support();
    const double lo = std::max(0.0, s.lo), hi = s.hi;
    if (!(hi > lo)) return d;
    switch (ext) {
        case Extension::zero:
            d.eval = [f](double x) { return x >= 0.0 ? f(x) : 0.0; };
            d.breaks = {lo, hi};
            break;
        case Extension::even:
            d.eval = [f](double x) { return x >= 0.0 ? f(x) : f(-x); };
            d.breaks = (lo > 0.0) ? std::vector<double>{-hi, -lo, lo, hi}
                                  : std::vector<double>{-hi, 0.0, hi};
            break;
        case Extension::odd:
            d.eval = [f](double x) { return x >= 0.0 ? f(x) : -f(-x); };
            d.breaks = (lo > 0.0) ? std::vector<double>{-hi, -lo, lo, hi}
                                  : std::vector<double>{-hi, 0.0, hi};
            break;
    }
    return d;
}

double extended_integral(const DataFunction& f, Extension ext, double a, double b) {
    // integral of the extended function over [a, b]
    double acc = f.integral(std::max(a, 0.0), std::max(b, 0.0));
    if (ext == Extension::zero) return acc;
    const double neg = f.integral(std::max(-b, 0.0), std::max(-a, 0.0));
    return acc + (ext == Extension::even ? neg : -neg);
}

double extended_eval(const DataFunction& f, Extension ext, double x) {
    if (x >= 0.0) return f(x);
    switch (ext) {
        case Extension::zero: return 0.0;
        case Extension::even: return f(-x);
        case Extension::odd: return -f(-x);
    }
    return 0.0;
}

// d'Alembert form of the embedded whole-line solution at nu = 1 (Caputo).
double u0_wave_limit(const IbvpSpec& spec, double x, double t) {
    const double c = std::sqrt(spec.kappa);
    double u = 0.5 * (extended_eval(spec.f, spec.extension, x - c * t) +
                      extended_eval(spec.f, spec.extension, x + c * t));
    if (spec.g && !spec.g->is_zero()) {
        if (spec.g->is_dirac()) {
            std::vector<std::pair<double, double>> images{{spec.g->center(), spec.g->weight()}};
            if (spec.extension != Extension::zero && spec.g->center() > 0.0)
                images.emplace_back(-spec.g->center(), spec.extension == Extension::even
                                                           ? spec.g->weight()
                                                           : -spec.g->weight());
            for (const auto& [ctr, w] : images)
                if (ctr > x - c * t && ctr < x + c * t) u += w / (2.0 * c);
        } else {
            u += extended_integral(*spec.g, spec.extension, x - c * t, x + c * t) / (2.0 * c);
        }
    }
    return u;
}

double u0_point(const IbvpSpec& spec, const detail::SpatialData& fdata,
                const detail::SpatialData& gdata, double x, double t,
                const QuadratureControl& qctrl, const InversionControl& ictrl) {
    if (spec.nu == 1.0) return u0_wave_limit(spec, x, t);
    const CaseKernels ck = case_kernels(spec);
    const bool caputo = spec.kind == DerivativeKind::caputo;
    const GreenKernel fker = caputo ? (ck.has_g ? GreenKernel::caputo_wave_f
                                                : GreenKernel::caputo_diff)
                                    : (ck.has_g ? GreenKernel::rl_wave_f : GreenKernel::rl_diff);
    double u = detail::convolve_kernel(fker, x, t, fdata, spec.nu, spec.kappa,
                                       qctrl.space_points, ictrl);
    if (ck.has_g) {
        const GreenKernel gker = caputo ? GreenKernel::caputo_wave_g : GreenKernel::rl_wave_g;
        u += detail::convolve_kernel(gker, x, t, gdata, spec.nu, spec.kappa, qctrl.space_points,
                                     ictrl);
    }
    return u;
}

// Boundary trace of u0 re-radiated to depth x: Linv{ u0^(0+, s) exp(-b s^nu) }.
// By the convolution theorem this is the same spatial quadrature as u0(0+, t)
// with every kernel argument shifted by b, so its quadrature error cancels
// against u0 as x -> 0+.
double trace_radiation(const IbvpSpec& spec, const detail::SpatialData& fdata,
                       const detail::SpatialData& gdata, double b, double t,
                       const QuadratureControl& qctrl, const InversionControl& ictrl) {
    const CaseKernels ck = case_kernels(spec);
    const double sk = std::sqrt(spec.kappa);
    const double front = 1.0 / (2.0 * sk);

    auto one_term = [&](const detail::SpatialData& data, double mu, bool d1) {
        double acc = 0.0;
        auto kernel = [&](double xi) {
            const double arg = std::abs(xi) / sk + b;
            return d1 ? kernel_b_d1(spec.nu, arg, t, ictrl)
                      : kernel_b(mu, spec.nu, arg, t, ictrl);
        };
        for (const auto& [c, w] : data.diracs) acc += w * front * kernel(c);
        if (data.eval) {
            std::vector<double> breaks = data.breaks;
            auto integrand = [&](double xi) { return front * kernel(xi) * data.eval(xi); };
            acc += integrate_piecewise(integrand, breaks, qctrl.space_points);
        }
        return acc;
    };

    double v = one_term(fdata, ck.mu_f, ck.f_differentiated);
    if (ck.has_g) v += one_term(gdata, ck.mu_g, false);
    return v;
}

bool constant_on_halfline(const DataFunction& h, double* level) {
    if (h.kind() == DataFunction::Kind::indicator && h.lo() == 0.0 &&
        !std::isfinite(h.hi())) {
        *level = h.amplitude();
        return true;
    }
    if (h.kind() == DataFunction::Kind::polynomial && h.lo() == 0.0 && !std::isfinite(h.hi()) &&
        h.coeffs().size() == 1) {
        *level = h.coeffs()[0];
        return true;
    }
    if (h.is_zero()) {
        *level = 0.0;
        return true;
    }
    return false;
}

// Time-domain path with the forcing amplitude resolved analytically.
// D^{-2 nu} phi = 2[h - u0(0+,.)]; for constant h = A and zero data this gives
// phi(t) = 2A t^{-2 nu}/Gamma(1-2 nu) (a Dirac impulse 2A delta at nu = 1/2),
// and u(x,t) = (1/2) int_0^t phi(tau) R_{2 nu,nu}(b, t - tau) dtau.
double time_domain_point(double level, double nu, double b, double t,
                         const InversionControl& ictrl) {
    if (level == 0.0) return 0.0;
    if (nu == 0.5) return level * kernel_b(2.0 * nu, nu, b, t, ictrl);
    // substitution tau = sigma^{1/(1-2nu)} flattens the tau^{-2nu} endpoint
    const double p = 1.0 - 2.0 * nu;
    const double c = 2.0 * level / gamma(p);
    auto integrand = [&](double sigma) {
        const double tau = std::pow(sigma, 1.0 / p);
        return 0.5 * c / p * kernel_b(2.0 * nu, nu, b, t - tau, ictrl);
    };
    return adaptive_simpson(integrand, 0.0, std::pow(t, p), 1e-9).value;
}

}  // namespace

void IbvpSpec::validate() const {
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("IbvpSpec: nu must be in (0,1]");
    if (!(kappa > 0.0)) throw std::invalid_argument("IbvpSpec: kappa must be > 0");
    if (wave_regime() && !g.has_value())
        throw std::invalid_argument("IbvpSpec: nu > 1/2 requires the second datum g");
    if (!wave_regime() && g.has_value())
        throw std::invalid_argument("IbvpSpec: g is only admissible for nu > 1/2");
    if (kind == DerivativeKind::riemann_liouville && nu == 1.0)
        throw std::invalid_argument("IbvpSpec: Riemann-Liouville with nu = 1 is out of scope");
    if (!h.has_laplace_transform())
        throw std::invalid_argument(
            "IbvpSpec: boundary data must have a closed Laplace transform (gaussian rejected)");
    if (nu == 1.0 && (f.is_dirac() || h.is_dirac()))
        throw std::invalid_argument("IbvpSpec: dirac data at nu = 1 is distributional");
}

double boundary_response(const DataFunction& h, double b, double nu, double t,
                         const InversionControl& ictrl) {
    if (!(b > 0.0)) throw std::domain_error("boundary_response: b must be > 0");
    if (!(t > 0.0)) return 0.0;

    // Linv{ e^{-s tau0} / s^{m+1} * e^{-b s^nu} } = R_{m+1,nu}(b, t - tau0)
    auto shifted = [&](double mu, double tau0) {
        const double tt = t - tau0;
        if (!(tt > 0.0)) return 0.0;
        return kernel_b(mu, nu, b, tt, ictrl);  // callers pass mu >= 1
    };
    // tail of t^k past tau0 maps onto sum_m (k!/(k-m)!) tau0^{k-m} R_{m+1,nu}(b, t-tau0)
    auto poly_tail_response = [&](int k, double tau0) {
        double acc = 0.0;
        double fall = 1.0;
        for (int m = 0; m <= k; ++m) {
            acc += fall * std::pow(tau0, static_cast<double>(k - m)) * shifted(m + 1.0, tau0);
            fall *= static_cast<double>(k - m);
        }
        return acc;
    };

    switch (h.kind()) {
        case DataFunction::Kind::zero: return 0.0;
        case DataFunction::Kind::dirac: {
            const double tt = t - h.center();
            if (!(tt > 0.0)) return 0.0;
            if (nu == 1.0)
                throw std::domain_error("boundary_response: dirac h at nu = 1 is distributional");
            return h.weight() * aux_eval_value(AuxParams{0.0, nu, b}, tt, ictrl);
        }
        case DataFunction::Kind::indicator: {
            double v = h.amplitude() * shifted(1.0, h.lo());
            if (std::isfinite(h.hi())) v -= h.amplitude() * shifted(1.0, h.hi());
            return v;
        }
        case DataFunction::Kind::polynomial: {
            double v = 0.0;
            for (std::size_t k = 0; k < h.coeffs().size(); ++k) {
                if (h.coeffs()[k] == 0.0) continue;
                double term = poly_tail_response(static_cast<int>(k), h.lo());
                if (std::isfinite(h.hi()))
                    term -= poly_tail_response(static_cast<int>(k), h.hi());
                v += h.coeffs()[k] * term;
            }
            return v;
        }
        case DataFunction::Kind::table: {
            double v = 0.0;
            const auto& xs = h.xs();
            const auto& ys = h.ys();
            for (Eigen::Index i = 0; i + 1 < xs.size(); ++i) {
                const double beta = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
                const double alpha = ys[i] - beta * xs[i];
                v += alpha * (poly_tail_response(0, xs[i]) - poly_tail_response(0, xs[i + 1]));
                v += beta * (poly_tail_response(1, xs[i]) - poly_tail_response(1, xs[i + 1]));
            }
            return v;
        }
        case DataFunction::Kind::gaussian:
            throw std::domain_error("boundary_response: gaussian h has no closed transform");
    }
    return 0.0;
}

SolutionField embed_u0(const IbvpSpec& spec, const Eigen::Ref<const Eigen::ArrayXd>& xs,
                       const Eigen::Ref<const Eigen::ArrayXd>& ts,
                       const QuadratureControl& qctrl, const InversionControl& ictrl) {
    spec.validate();
    if (xs.size() == 0 || ts.size() == 0)
        throw std::invalid_argument("embed_u0: empty evaluation grid");
    for (Eigen::Index j = 0; j < xs.size(); ++j)
        if (!(xs[j] >= 0.0)) throw std::invalid_argument("embed_u0: xs must be >= 0");
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        if (!(ts[i] > 0.0)) throw std::invalid_argument("embed_u0: times must be > 0");

    const detail::SpatialData fdata = extend_data(spec.f, spec.extension);
    const detail::SpatialData gdata =
        spec.g ? extend_data(*spec.g, spec.extension) : detail::SpatialData{};

    SolutionField field;
    field.xs = xs;
    field.ts = ts;
    field.u.resize(ts.size(), xs.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        for (Eigen::Index j = 0; j < xs.size(); ++j)
            field.u(i, j) = u0_point(spec, fdata, gdata, xs[j], ts[i], qctrl, ictrl);
    field.meta.method = "embedded_u0";
    field.meta.space_points = qctrl.space_points;
    field.meta.inversion_nodes = ictrl.nodes;
    return field;
}

SolutionField solve_ibvp(const IbvpSpec& spec, const Eigen::Ref<const Eigen::ArrayXd>& xs,
                         const Eigen::Ref<const Eigen::ArrayXd>& ts,
                         const QuadratureControl& qctrl, const InversionControl& ictrl,
                         IbvpPath path) {
    spec.validate();
    if (xs.size() == 0 || ts.size() == 0)
        throw std::invalid_argument("solve_ibvp: empty evaluation grid");
    for (Eigen::Index j = 0; j < xs.size(); ++j)
        if (!(xs[j] > 0.0)) throw std::invalid_argument("solve_ibvp: xs must be > 0");
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        if (!(ts[i] > 0.0)) throw std::invalid_argument("solve_ibvp: times must be > 0");

    const double sk = std::sqrt(spec.kappa);
    const detail::SpatialData fdata = extend_data(spec.f, spec.extension);
    const detail::SpatialData gdata =
        spec.g ? extend_data(*spec.g, spec.extension) : detail::SpatialData{};
    const bool zero_data = spec.f.is_zero() && (!spec.g || spec.g->is_zero());

    double h_level = 0.0;
    if (path == IbvpPath::time_domain) {
        if (!zero_data || !constant_on_halfline(spec.h, &h_level) || spec.nu > 0.5)
            throw std::invalid_argument(
                "solve_ibvp: time-domain path needs zero data, constant h, nu <= 1/2");
    }

    auto point = [&](double x, double t) {
        const double b = x / sk;
        if (path == IbvpPath::time_domain) return time_domain_point(h_level, spec.nu, b, t, ictrl);
        if (spec.nu == 1.0) {
            // pure delay: u = u0 + [h - u0(0+,.)](t - b)
            double u = u0_point(spec, fdata, gdata, x, t, qctrl, ictrl);
            const double tt = t - b;
            if (tt > 0.0)
                u += spec.h(tt) - u0_point(spec, fdata, gdata, 0.0, tt, qctrl, ictrl);
            return u;
        }
        double u = boundary_response(spec.h, b, spec.nu, t, ictrl);
        if (!zero_data) {
            u += u0_point(spec, fdata, gdata, x, t, qctrl, ictrl);
            u -= trace_radiation(spec, fdata, gdata, b, t, qctrl, ictrl);
        }
        return u;
    };

    SolutionField field;
    field.xs = xs;
    field.ts = ts;
    field.u.resize(ts.size(), xs.size());
    for (Eigen::Index i = 0; i < ts.size(); ++i)
        for (Eigen::Index j = 0; j < xs.size(); ++j) field.u(i, j) = point(xs[j], ts[i]);

    // Dirichlet consistency at a near-boundary probe
    if (qctrl.boundary_check_tol > 0.0 && !spec.h.is_dirac()) {
        const double x_probe = 1e-3 * sk;
        for (double t : {ts[0], ts[ts.size() - 1]}) {
            const double want = spec.h(t);
            const double got = point(x_probe, t);
            if (std::abs(got - want) > qctrl.boundary_check_tol * (1.0 + std::abs(want)))
                throw ToleranceError("solve_ibvp: Dirichlet mismatch at the boundary probe");
        }
    }

    field.meta.method =
        path == IbvpPath::time_domain ? "time_domain_phi" : "laplace_matching";
    field.meta.space_points = qctrl.space_points;
    field.meta.inversion_nodes = ictrl.nodes;
    field.meta.tol = qctrl.tol;
    return field;
}

FundamentalSolutions fundamental_pair(double nu, double kappa,
                                      const Eigen::Ref<const Eigen::ArrayXd>& xs,
                                      const Eigen::Ref<const Eigen::ArrayXd>& ts,
                                      const InversionControl& ictrl) {
    if (!(nu > 0.0 && nu < 1.0))
        throw std::invalid_argument("fundamental_pair: nu must be in (0,1)");
    if (!(kappa > 0.0)) throw std::invalid_argument("fundamental_pair: kappa must be > 0");
    const double sk = std::sqrt(kappa);
    FundamentalSolutions fs;
    fs.xs = xs;
    fs.ts = ts;
    fs.gc.resize(ts.size(), xs.size());
    fs.gs.resize(ts.size(), xs.size());
    for (Eigen::Index j = 0; j < xs.size(); ++j) {
        if (!(xs[j] > 0.0)) throw std::invalid_argument("fundamental_pair: xs must be > 0");
        const double b = xs[j] / sk;
        for (Eigen::Index i = 0; i < ts.size(); ++i) {
            fs.gs(i, j) = aux_eval_value(AuxParams{0.0, nu, b}, ts[i], ictrl);
            fs.gc(i, j) =
                aux_eval_value(AuxParams{1.0 - nu, nu, b}, ts[i], ictrl) / (2.0 * sk);
        }
    }
    return fs;
}

}  // namespace fracwave
