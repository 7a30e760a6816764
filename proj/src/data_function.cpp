#include "fracwave/data_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracwave {

namespace {

// Cut gaussians where the profile drops below 1e-18 of the amplitude.
const double kGaussianCut = std::sqrt(std::log(1e18));

// E_k(tau; s) = integral tail of t^k exp(-s t): antiderivative of -t^k e^{-st}
// evaluated at tau, i.e. e^{-s tau} * sum_{m=0}^{k} k!/(k-m)! tau^{k-m} / s^{m+1}.
Complex poly_tail(int k, double tau, Complex s) {
    Complex acc(0.0, 0.0);
    double fall = 1.0;  // k!/(k-m)!
    Complex spow = s;
    for (int m = 0; m <= k; ++m) {
        acc += fall * std::pow(tau, static_cast<double>(k - m)) / spow;
        fall *= static_cast<double>(k - m);
        spow *= s;
    }
    return std::exp(-s * tau) * acc;
}

double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

}  // namespace

DataFunction DataFunction::zero() {
    return DataFunction{};
}

DataFunction DataFunction::gaussian(double center, double width, double amplitude) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian: width must be > 0");
    DataFunction f;
    f.kind_ = Kind::gaussian;
    f.p0_ = center;
    f.p1_ = width;
    f.p2_ = amplitude;
    return f;
}

DataFunction DataFunction::indicator(double lo, double hi, double amplitude) {
    if (!(lo < hi)) throw std::invalid_argument("indicator: requires lo < hi");
    DataFunction f;
    f.kind_ = Kind::indicator;
    f.p0_ = lo;
    f.p1_ = hi;
    f.p2_ = amplitude;
    return f;
}

DataFunction DataFunction::polynomial(std::vector<double> coeffs, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("polynomial: requires lo < hi");
    if (coeffs.empty()) throw std::invalid_argument("polynomial: empty coefficient list");
    DataFunction f;
    f.kind_ = Kind::polynomial;
    f.p0_ = lo;
    f.p1_ = hi;
    f.coeffs_ = std::move(coeffs);
    return f;
}

DataFunction DataFunction::table(Eigen::ArrayXd xs, Eigen::ArrayXd ys) {
    if (xs.size() < 2 || xs.size() != ys.size())
        throw std::invalid_argument("table: need matching xs/ys with at least two entries");
    for (Eigen::Index i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument("table: xs must be strictly increasing");
    DataFunction f;
    f.kind_ = Kind::table;
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    return f;
}

DataFunction DataFunction::dirac(double center, double weight) {
    DataFunction f;
    f.kind_ = Kind::dirac;
    f.p0_ = center;
    f.p2_ = weight;
    return f;
}

bool DataFunction::is_zero() const {
    switch (kind_) {
        case Kind::zero: return true;
        case Kind::gaussian:
        case Kind::indicator: return p2_ == 0.0;
        case Kind::dirac: return p2_ == 0.0;
        case Kind::polynomial:
            return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
        case Kind::table: return (ys_ == 0.0).all();
    }
    return false;
}

double DataFunction::operator()(double x) const {
    switch (kind_) {
        case Kind::zero: return 0.0;
        case Kind::gaussian: {
            const double z = (x - p0_) / p1_;
            return p2_ * std::exp(-z * z);
        }
        case Kind::indicator: return (x >= p0_ && x <= p1_) ? p2_ : 0.0;
        case Kind::polynomial: return (x >= p0_ && x <= p1_) ? poly_eval(coeffs_, x) : 0.0;
        case Kind::table: {
            if (x <= xs_[0] || x >= xs_[xs_.size() - 1]) {
                if (x == xs_[0]) return ys_[0];
                if (x == xs_[xs_.size() - 1]) return ys_[ys_.size() - 1];
                return 0.0;
            }
            const double* begin = xs_.data();
            const double* end = begin + xs_.size();
            const Eigen::Index i = std::upper_bound(begin, end, x) - begin;
            const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return ys_[i - 1] + w * (ys_[i] - ys_[i - 1]);
        }
        case Kind::dirac:
            throw std::domain_error("dirac data has no pointwise values");
    }
    return 0.0;
}

Interval DataFunction::support() const {
    switch (kind_) {
        case Kind::zero: return {0.0, 0.0};
        case Kind::gaussian: return {p0_ - kGaussianCut * p1_, p0_ + kGaussianCut * p1_};
        case Kind::indicator:
        case Kind::polynomial: return {p0_, p1_};
        case Kind::table: return {xs_[0], xs_[xs_.size() - 1]};
        case Kind::dirac: return {p0_, p0_};
    }
    return {0.0, 0.0};
}

bool DataFunction::has_bounded_support() const {
    const Interval s = support();
    return std::isfinite(s.lo) && std::isfinite(s.hi);
}

double DataFunction::integral(double a, double b) const {
    if (a > b) return -integral(b, a);
    switch (kind_) {
        case Kind::zero: return 0.0;
        case Kind::gaussian: {
            // amplitude * width * sqrt(pi)/2 * [erf((b-c)/w) - erf((a-c)/w)]
            const double c = 0.5 * p2_ * p1_ * std::sqrt(3.14159265358979323846);
            return c * (std::erf((b - p0_) / p1_) - std::erf((a - p0_) / p1_));
        }
        case Kind::indicator: {
            const double lo = std::max(a, p0_), hi = std::min(b, p1_);
            return (hi > lo) ? p2_ * (hi - lo) : 0.0;
        }
        case Kind::polynomial: {
            const double lo = std::max(a, p0_), hi = std::min(b, p1_);
            if (!(hi > lo)) return 0.0;
            auto anti = [&](double x) {
                double v = 0.0;
                for (std::size_t i = coeffs_.size(); i-- > 0;)
                    v = v * x + coeffs_[i] / static_cast<double>(i + 1);
                return v * x;
            };
            return anti(hi) - anti(lo);
        }
        case Kind::table: {
            double acc = 0.0;
            for (Eigen::Index i = 0; i + 1 < xs_.size(); ++i) {
                const double lo = std::max(a, xs_[i]), hi = std::min(b, xs_[i + 1]);
                if (!(hi > lo)) continue;
                acc += 0.5 * ((*this)(lo) + (*this)(hi)) * (hi - lo);
            }
            return acc;
        }
        case Kind::dirac: return (p0_ > a && p0_ < b) ? p2_ : 0.0;
    }
    return 0.0;
}

double DataFunction::second_derivative(double x) const {
    switch (kind_) {
        case Kind::zero: return 0.0;
        case Kind::gaussian: {
            const double z = (x - p0_) / p1_;
            return p2_ * std::exp(-z * z) * (4.0 * z * z - 2.0) / (p1_ * p1_);
        }
        case Kind::polynomial: {
            if (x <= p0_ || x >= p1_) return 0.0;
            double v = 0.0;
            for (std::size_t i = coeffs_.size(); i-- > 2;)
                v = v * x + coeffs_[i] * static_cast<double>(i) * static_cast<double>(i - 1);
            return v;
        }
        default:
            throw std::domain_error("second_derivative: not classically defined for this kind");
    }
}

Complex DataFunction::laplace(Complex s) const {
    switch (kind_) {
        case Kind::zero: return {0.0, 0.0};
        case Kind::dirac:
            if (p0_ < 0.0) throw std::domain_error("laplace: dirac center must be >= 0");
            return p2_ * std::exp(-s * p0_);
        case Kind::indicator: {
            if (p0_ < 0.0) throw std::domain_error("laplace: indicator must start at lo >= 0");
            Complex v = std::exp(-s * p0_) / s;
            if (std::isfinite(p1_)) v -= std::exp(-s * p1_) / s;
            return p2_ * v;
        }
        case Kind::polynomial: {
            if (p0_ < 0.0) throw std::domain_error("laplace: polynomial must start at lo >= 0");
            Complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < coeffs_.size(); ++k) {
                if (coeffs_[k] == 0.0) continue;
                Complex v = poly_tail(static_cast<int>(k), p0_, s);
                if (std::isfinite(p1_)) v -= poly_tail(static_cast<int>(k), p1_, s);
                acc += coeffs_[k] * v;
            }
            return acc;
        }
        case Kind::table: {
            if (xs_[0] < 0.0) throw std::domain_error("laplace: table must start at x >= 0");
            Complex acc(0.0, 0.0);
            for (Eigen::Index i = 0; i + 1 < xs_.size(); ++i) {
                // segment (alpha + beta t) on [x_i, x_{i+1}]
                const double beta = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
                const double alpha = ys_[i] - beta * xs_[i];
                acc += alpha * (poly_tail(0, xs_[i], s) - poly_tail(0, xs_[i + 1], s));
                acc += beta * (poly_tail(1, xs_[i], s) - poly_tail(1, xs_[i + 1], s));
            }
            return acc;
        }
        case Kind::gaussian:
            throw std::domain_error("laplace: gaussian data has no closed transform");
    }
    return {0.0, 0.0};
}

}  // namespace fracwave
