#pragma once

#include "fracwave/errors.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace fracwave {

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    std::size_t evals = 0;
};

namespace detail {

template <typename F>
void adaptive_simpson_rec(const F& f, double a, double m, double b, double fa, double fm,
                          double fb, double whole, double tol, int depth, QuadResult& out) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    out.evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        out.value += left + right + delta / 15.0;
        out.err_est += std::abs(delta) / 15.0;
        return;
    }
    adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out);
    adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

/// Adaptive Simpson on [a,b] to absolute tolerance abs_tol.
/// Throws ToleranceError when the recursion depth is exhausted before the
/// accumulated error estimate meets the request.
template <typename F>
QuadResult adaptive_simpson(const F& f, double a, double b, double abs_tol,
                            int max_depth = 48) {
    QuadResult out;
    if (a == b) return out;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    out.evals = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    detail::adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth, out);
    if (out.err_est > 1e3 * abs_tol && out.err_est > 1e-14 * std::abs(out.value))
        throw ToleranceError("adaptive_simpson: requested tolerance not met");
    return out;
}

/// Composite Simpson with n panels (2n+1 evaluations). Works for double and
/// complex-valued integrands.
template <typename F>
auto composite_simpson(const F& f, double a, double b, int panels) -> decltype(f(a)) {
    using V = decltype(f(a));
    if (panels < 1) panels = 1;
    const double h = (b - a) / (2.0 * panels);
    V sum = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) {
        const double w = (i & 1) ? 4.0 : 2.0;
        sum += w * f(a + h * i);
    }
    return sum * (h / 3.0);
}

/// Composite Simpson over a list of breakpoints; each subinterval receives a
/// share of `total_points` proportional to its length (at least 4 panels).
/// Endpoint evaluations are nudged into the open subinterval so data with
/// jumps exactly at a breakpoint is integrated with one-sided limits.
template <typename F>
auto integrate_piecewise(const F& f, const std::vector<double>& breaks, int total_points)
    -> decltype(f(0.0)) {
    using V = decltype(f(0.0));
    V acc = V{};
    if (breaks.size() < 2) return acc;
    const double total_len = breaks.back() - breaks.front();
    if (!(total_len > 0.0)) return acc;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const double len = b - a;
        if (!(len > 0.0)) continue;
        int panels = static_cast<int>(std::ceil(0.5 * total_points * len / total_len));
        panels = std::max(panels, 4);
        const double nudge = 1e-12 * len;
        auto inner = [&](double x) {
            return f(std::min(std::max(x, a + nudge), b - nudge));
        };
        acc += composite_simpson(inner, a, b, panels);
    }
    return acc;
}

}  // namespace fracwave
