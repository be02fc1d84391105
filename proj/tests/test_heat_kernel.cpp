#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypermult/errors.hpp"
#include "hypermult/heat_kernel.hpp"

using namespace hypermult;
using namespace hypermult::heat;

TEST_SUITE("kernel") {

TEST_CASE("reference values at t = 1") {
    // 40-digit mpmath quadrature of the same integral representation
    CHECK(kernel_curv_minus1(1.0, 0.0) == doctest::Approx(0.05753575520572197).epsilon(1e-12));
    CHECK(kernel_curv_minus1(1.0, 1.0) == doctest::Approx(0.04149118395782222).epsilon(1e-12));
    CHECK(kernel_curv_minus1(1.0, 2.0) == doctest::Approx(0.01591411576891043).epsilon(1e-12));
    CHECK(kernel_curv_minus1(1.0, 0.0) > kernel_curv_minus1(1.0, 1.0));
    CHECK(kernel_curv_minus1(1.0, 1.0) > kernel_curv_minus1(1.0, 2.0));
}

TEST_CASE("stochastic completeness") {
    for (double t : {0.5, 1.0, 5.0}) CHECK(kernel_total_mass(t) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(kernel_total_mass(4.0, 0.5) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(kernel_total_mass(2.0, 0.25) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("two quadrature routes agree") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> lt(-3.0, 3.0), lr(0.0, 100.0);
    for (int k = 0; k < 100; ++k) {
        const double t = std::pow(10.0, lt(rng));
        const double rho = lr(rng);
        const double a = log_kernel_curv_minus1(t, rho);
        const double b = log_kernel_curv_minus1_tanh_sinh(t, rho);
        REQUIRE(std::abs(std::expm1(a - b)) <= 1e-8);
    }
}

TEST_CASE("positive and decreasing in rho") {
    for (double t : {1e-3, 0.1, 1.0, 10.0, 1000.0}) {
        double prev = INFINITY;
        for (int k = 0; k <= 100; ++k) {
            const double lk = log_kernel_curv_minus1(t, k * 1.0);
            REQUIRE(std::isfinite(lk));
            REQUIRE(lk < prev);
            prev = lk;
        }
    }
}

TEST_CASE("small-time Euclidean limit") {
    // k_t(rho) ~ e^{-rho^2/4t} / (4 pi t) for t, rho small
    const double t = 1e-3, rho = 0.01;
    const double euclid = std::exp(-rho * rho / (4 * t)) / (4 * std::numbers::pi * t);
    CHECK(kernel_curv_minus1(t, rho) == doctest::Approx(euclid).epsilon(1e-3));
}

TEST_CASE("rescaled kernel") {
    for (double t : {0.5, 3.0})
        for (double rho : {0.0, 1.5, 7.0})
            CHECK(kernel_rescaled({t, rho, 1.0}) == kernel_curv_minus1(t, rho));
    CHECK(kernel_rescaled({4.0, 2.0, 0.5}) == doctest::Approx(0.01037279598945555).epsilon(1e-12));
    CHECK(kernel_rescaled({4.0, 2.0, 0.5}) == doctest::Approx(0.25 * kernel_curv_minus1(1.0, 1.0)).epsilon(1e-14));
    // flat limit: k_{t,eps}(d) -> e^{-d^2/4t}/(4 pi t) as eps -> 0
    const double t = 2.0, d = 1.0, eps = 0.03;
    CHECK(kernel_rescaled({t, d, eps}) ==
          doctest::Approx(std::exp(-d * d / (4 * t)) / (4 * std::numbers::pi * t)).epsilon(2e-3));
    CHECK_THROWS_AS(kernel_rescaled({1.0, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(kernel_rescaled({1.0, 1.0, 1.5}), DomainError);
}

TEST_CASE("domain") {
    CHECK_THROWS_AS(kernel_curv_minus1(1e-4, 1.0), DomainError);
    CHECK_THROWS_AS(kernel_curv_minus1(1.0, 101.0), DomainError);
    CHECK_THROWS_AS(kernel_curv_minus1(1.0, -1.0), DomainError);
}

TEST_CASE("Gaussian majorant grid") {
    const Eigen::VectorXd ts = Eigen::VectorXd::LinSpaced(50, 1.0, 50.0);
    const Eigen::VectorXd rhos = Eigen::VectorXd::LinSpaced(41, 0.0, 40.0);
    const auto r = gaussian_majorant_check(ts, rhos, 1.0);
    CHECK(r.finite);
    REQUIRE(r.rows.size() == 50 * 41);
    // grid maximum sits at the origin at t = 1
    CHECK(r.c_star == doctest::Approx(0.05753575520572197).epsilon(1e-12));
    CHECK(r.t_at_max == 1.0);
    CHECK(r.rho_at_max == 0.0);
    for (const auto& row : r.rows) {
        if (row.rho == 0.0) CHECK(row.gaussian_ratio <= kernel_curv_minus1(1.0, 0.0));
        CHECK(row.gaussian_ratio <= r.c_star);
    }
    Eigen::VectorXd bad(1);
    bad << 0.5;
    CHECK_THROWS_AS(gaussian_majorant_check(bad, rhos), DomainError);
}

TEST_CASE("majorant series") {
    // mpmath sums to m = 8t + 400
    CHECK(kernel_sum_majorant(1.0).sum == doctest::Approx(36.61752847451481).epsilon(1e-13));
    CHECK(kernel_sum_majorant(10.0).sum == doctest::Approx(7691473850.705158).epsilon(1e-13));
    CHECK(kernel_sum_majorant(50.0).sum == doctest::Approx(9.529127159394277e44).epsilon(1e-13));
    CHECK(kernel_sum_majorant(1.0).split_bound == doctest::Approx(123.3182820852442).epsilon(1e-13));
    CHECK(kernel_sum_majorant(10.0).split_bound == doctest::Approx(3.723740291681596e17).epsilon(1e-13));
    CHECK(kernel_sum_majorant(50.0).split_bound == doctest::Approx(1.143132218562371e87).epsilon(1e-13));
    for (int k = 0; k <= 490; ++k) {
        const double t = 1.0 + 0.1 * k;
        const auto s = kernel_sum_majorant(t);
        REQUIRE(s.sum >= 1.0);
        REQUIRE(s.sum <= s.split_bound);
        REQUIRE(s.tail_bound < 1e-12 * s.sum);
    }
    const Eigen::VectorXd ts = Eigen::VectorXd::LinSpaced(491, 1.0, 50.0);
    CHECK(majorant_growth_constant(ts) == doctest::Approx(0.6706734285371546).epsilon(1e-12));
    CHECK_THROWS_AS(kernel_sum_majorant(0.5), DomainError);
    CHECK_THROWS_AS(kernel_sum_majorant(51.0), DomainError);
}

TEST_CASE("annulus counting") {
    CHECK(annulus_count_bound(1.0, 0) ==
          doctest::Approx((std::cosh(1.5) - 1.0) / (std::cosh(0.5) - 1.0)).epsilon(1e-14));
    // grows like e^m
    CHECK(annulus_count_bound(1.0, 20) / annulus_count_bound(1.0, 19) == doctest::Approx(std::exp(1.0)).epsilon(1e-6));
}

}
