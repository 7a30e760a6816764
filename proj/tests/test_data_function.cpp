#include "doctest.h"

#include "fracwave/data_function.hpp"
#include "fracwave/laplace_inversion.hpp"

#include <cmath>

using namespace fracwave;

TEST_CASE("evaluation per kind") {
    auto gauss = DataFunction::gaussian(0.0, 1.0, 1.0);
    CHECK(gauss(0.0) == 1.0);
    CHECK(gauss(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    auto ind = DataFunction::indicator(1.0, 2.0, 3.0);
    CHECK(ind(1.5) == 3.0);
    CHECK(ind(0.99) == 0.0);

    auto poly = DataFunction::polynomial({1.0, 0.0, 2.0}, -1.0, 1.0);  // 1 + 2x^2
    CHECK(poly(0.5) == doctest::Approx(1.5));
    CHECK(poly(2.0) == 0.0);

    Eigen::ArrayXd xs(3), ys(3);
    xs << 0.0, 1.0, 2.0;
    ys << 0.0, 1.0, 0.0;
    auto tab = DataFunction::table(xs, ys);
    CHECK(tab(0.5) == doctest::Approx(0.5));
    CHECK(tab(1.5) == doctest::Approx(0.5));
    CHECK(tab(3.0) == 0.0);

    CHECK_THROWS_AS(DataFunction::dirac(0.5, 1.0)(0.4), std::domain_error);
    CHECK(DataFunction::zero()(7.0) == 0.0);
}

TEST_CASE("integral closed forms") {
    auto gauss = DataFunction::gaussian(0.0, 1.0, 2.0);
    CHECK(gauss.integral(-20.0, 20.0) ==
          doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-14));

    auto ind = DataFunction::indicator(0.0, 2.0, 1.5);
    CHECK(ind.integral(-1.0, 1.0) == doctest::Approx(1.5));

    auto poly = DataFunction::polynomial({0.0, 1.0}, 0.0, 4.0);  // x on [0,4]
    CHECK(poly.integral(1.0, 3.0) == doctest::Approx(4.0));
    CHECK(poly.integral(3.0, 1.0) == doctest::Approx(-4.0));

    CHECK(DataFunction::dirac(0.5, 2.0).integral(0.0, 1.0) == 2.0);
    CHECK(DataFunction::dirac(0.5, 2.0).integral(0.6, 1.0) == 0.0);
}

TEST_CASE("laplace transforms: elementary checks at real s") {
    const Complex s(1.3, 0.0);
    // indicator on [0, inf): A/s
    auto hconst = DataFunction::indicator(0.0, DataFunction::inf, 2.0);
    CHECK(std::abs(hconst.laplace(s) - Complex(2.0 / 1.3, 0.0)) < 1e-14);

    // dirac at c: w e^{-sc}
    auto imp = DataFunction::dirac(0.7, 3.0);
    CHECK(std::abs(imp.laplace(s) - 3.0 * std::exp(-s * 0.7)) < 1e-14);

    // t on [0, inf): 1/s^2
    auto ramp = DataFunction::polynomial({0.0, 1.0}, 0.0, DataFunction::inf);
    CHECK(std::abs(ramp.laplace(s) - Complex(1.0 / (1.3 * 1.3), 0.0)) < 1e-13);

    // indicator on [a,b]: (e^{-sa} - e^{-sb})/s; cross-check by quadrature
    auto box = DataFunction::indicator(0.5, 2.0, 1.0);
    Complex ref(0.0, 0.0);
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double tau = 0.5 + 1.5 * (i + 0.5) / n;
        ref += std::exp(-s * tau) * (1.5 / n);
    }
    CHECK(std::abs(box.laplace(s) - ref) < 1e-7);

    CHECK_THROWS_AS(DataFunction::gaussian(0.0, 1.0, 1.0).laplace(s), std::domain_error);
}

TEST_CASE("laplace transform of a table against direct quadrature") {
    Eigen::ArrayXd xs(3), ys(3);
    xs << 0.0, 1.0, 2.0;
    ys << 0.0, 2.0, 0.0;
    auto tab = DataFunction::table(xs, ys);
    for (Complex s : {Complex(1.0, 0.0), Complex(0.7, 2.0), Complex(-1.5, 4.0)}) {
        Complex ref(0.0, 0.0);
        const int n = 40000;
        for (int i = 0; i < n; ++i) {
            const double tau = 2.0 * (i + 0.5) / n;
            ref += std::exp(-s * tau) * tab(tau) * (2.0 / n);
        }
        CHECK(std::abs(tab.laplace(s) - ref) < 1e-6 * (1.0 + std::abs(ref)));
    }
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(DataFunction::gaussian(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DataFunction::indicator(2.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(DataFunction::polynomial({}, 0.0, 1.0), std::invalid_argument);
    Eigen::ArrayXd xs(2), ys(2);
    xs << 1.0, 1.0;
    ys << 0.0, 0.0;
    CHECK_THROWS_AS(DataFunction::table(xs, ys), std::invalid_argument);
}

TEST_CASE("support and zero detection") {
    CHECK(DataFunction::zero().is_zero());
    CHECK(DataFunction::indicator(0.0, 1.0, 0.0).is_zero());
    CHECK(!DataFunction::indicator(0.0, 1.0, 0.5).is_zero());
    auto g = DataFunction::gaussian(2.0, 0.5, 1.0);
    const Interval s = g.support();
    CHECK(s.lo < 2.0);
    CHECK(s.hi > 2.0);
    CHECK(std::abs(g(s.lo)) < 1e-17);
    CHECK(!DataFunction::indicator(0.0, DataFunction::inf, 1.0).has_bounded_support());
}
