#include "doctest.h"

#include "fracwave/distribution.hpp"
#include "fracwave/special_functions.hpp"

#include <algorithm>
#include <cmath>

using namespace fracwave;

TEST_CASE("pdf: normal reduction at nu = 1/2, kappa = 1/2") {
    const FracDist d{0.5, 0.5, 1.0};
    CHECK(pdf(d, 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
    for (double x : {-1.5, -0.3, 0.7, 2.0}) {
        const double ref = std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI);
        CHECK(pdf(d, x) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(pdf(d, x) == pdf(d, -x));
    }
}

TEST_CASE("pdf: center value at generic nu from the collapsed-kernel limit") {
    const FracDist d{0.4, 1.0, 1.0};
    CHECK(pdf(d, 0.0) == doctest::Approx(0.33575248622103668).epsilon(1e-12));
}

TEST_CASE("pdf: nonnegativity on a sampled grid in the diffusion regime") {
    for (double nu : {0.25, 0.4, 0.5}) {
        const FracDist d{nu, 1.0, 1.0};
        for (double x = 0.0; x <= 6.0; x += 0.25) CHECK(pdf(d, x) >= -1e-12);
    }
}

TEST_CASE("total_mass: normalization") {
    for (double nu : {0.25, 0.4, 0.5}) {
        for (double t : {0.5, 1.0, 2.0}) {
            const FracDist d{nu, 1.0, t};
            CHECK(total_mass(d, 1e-5) == doctest::Approx(1.0).epsilon(1e-4));
        }
    }
}

TEST_CASE("rl_mass: power law and the nu = 1/2 exception") {
    CHECK(rl_mass(0.5, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rl_mass(0.5, 7.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rl_mass(0.4, 2.0) == doctest::Approx(0.7477481059219281).epsilon(1e-13));
    CHECK(std::abs(rl_mass(0.4, 2.0) - 1.0) > 0.05);
    CHECK(rl_mass(0.3, 1.0) ==
          doctest::Approx(1.0 / fracwave::gamma(0.6)).epsilon(1e-13));
}

TEST_CASE("generalized gaussian: normal and Laplace members") {
    // a = sqrt(2t), b = 2, c = 0 reduces to N(0, t)
    const double t = 1.0;
    CHECK(generalized_gaussian_pdf(std::sqrt(2.0 * t), 2.0, 0.0, 0.0) ==
          doctest::Approx(0.3989422804014327).epsilon(1e-13));
    CHECK(generalized_gaussian_pdf(1.0, 1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(generalized_gaussian_pdf(1.3, 1.7, 0.4, 1.0) ==
          doctest::Approx(generalized_gaussian_pdf(1.3, 1.7, 0.4, -0.2)).epsilon(1e-13));
    CHECK_THROWS_AS(generalized_gaussian_pdf(0.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("cdf and quantile: symmetry and the normal 97.5% point") {
    const FracDist d{0.5, 0.5, 1.0};  // N(0,1)
    const FracDistTable table(d);
    CHECK(table.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(table.quantile(0.5) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(table.quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-5));
    CHECK(table.cdf(1.0) + table.cdf(-1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(table.quantile(0.0), std::invalid_argument);
}

TEST_CASE("cdf table at fractional order integrates the pdf") {
    const FracDist d{0.4, 1.0, 1.0};
    const FracDistTable table(d);
    // direct quadrature cross-check at a few points
    for (double x : {0.5, 1.5}) {
        double acc = 0.0;
        const int n = 2000;
        for (int i = 0; i < n; ++i) {
            const double xi = x * (i + 0.5) / n;
            acc += pdf(d, xi) * (x / n);
        }
        CHECK(table.cdf(x) == doctest::Approx(0.5 + acc).epsilon(1e-4));
    }
}

TEST_CASE("sampling: deterministic under a fixed seed, KS-close to the cdf") {
    const FracDist d{0.5, 0.5, 1.0};
    const FracDistTable table(d);

    std::mt19937_64 rng(12345);
    const Eigen::ArrayXd s1 = table.sample(2000, rng);
    std::mt19937_64 rng2(12345);
    const Eigen::ArrayXd s2 = table.sample(2000, rng2);
    CHECK((s1 == s2).all());

    std::vector<double> sorted(s1.data(), s1.data() + s1.size());
    std::sort(sorted.begin(), sorted.end());
    double ks = 0.0;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double c = table.cdf(sorted[i]);
        ks = std::max(ks, std::abs(c - (i + 1) / n));
        ks = std::max(ks, std::abs(c - i / n));
    }
    CHECK(ks < 0.05);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(pdf(FracDist{0.7, 1.0, 1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pdf(FracDist{0.4, -1.0, 1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rl_mass(1.4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(total_mass(FracDist{0.4, 1.0, 1.0}, -1.0), std::invalid_argument);
}
