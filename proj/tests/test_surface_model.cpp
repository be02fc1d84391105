#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hypermult/errors.hpp"
#include "hypermult/surface_model.hpp"
#include "oracles.hpp"

using namespace hypermult;

namespace {

SurfaceDescriptor theta(double a, double b, double c) {
    return SurfaceDescriptor::from_curves(2, {{"a", a, {0, 1}}, {"b", b, {0, 1}}, {"c", c, {0, 1}}});
}

std::vector<std::array<int, 2>> long_edges(const SurfaceDescriptor& d, double eps) {
    std::vector<std::array<int, 2>> e;
    for (const auto& c : d.curves)
        if (!(c.length < 2.0 * eps)) e.push_back(c.ends);
    return e;
}

}  // namespace

TEST_SUITE("surface") {

TEST_CASE("theta graph is a valid genus 2 descriptor") {
    const auto d = theta(1, 1, 1);
    CHECK(d.pants_count == 2);
    CHECK(validate_descriptor(d).ok);
    CHECK_NOTHROW(require_valid(d));
}

TEST_CASE("validation reports the first violated invariant") {
    auto bad_genus = theta(1, 1, 1);
    bad_genus.genus = 1;
    CHECK(validate_descriptor(bad_genus).invariant == "genus");

    auto four = SurfaceDescriptor::from_curves(2, {{"a", 1, {0, 1}}, {"b", 1, {0, 1}}, {"c", 1, {0, 1}},
                                                   {"d", 1, {0, 1}}});
    CHECK(validate_descriptor(four).invariant == "curve count");

    // self-loop plus a dangling edge at pants 0, pants 1 left with degree 2
    auto loop = SurfaceDescriptor::from_curves(2, {{"a", 1, {0, 0}}, {"b", 1, {0, 1}}, {"c", 1, {0, 0}}});
    CHECK(validate_descriptor(loop).invariant == "degree");

    CHECK(validate_descriptor(theta(1, 0, 1)).invariant == "length");
    CHECK(validate_descriptor(theta(1, -2, 1)).invariant == "length");
    CHECK(validate_descriptor(theta(1, INFINITY, 1)).invariant == "length");

    // genus 3: two theta-like blocks that never meet
    auto split = SurfaceDescriptor::from_curves(
        3, {{"a", 1, {0, 1}}, {"b", 1, {0, 1}}, {"c", 1, {0, 1}}, {"d", 1, {2, 3}}, {"e", 1, {2, 3}}, {"f", 1, {2, 3}}});
    CHECK(validate_descriptor(split).invariant == "connectivity");

    try {
        require_valid(four);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(e.invariant() == "curve count");
    }
}

TEST_CASE("short geodesic count") {
    const auto d = theta(0.1, 0.3, 1.0);
    CHECK(count_short_geodesics(d, 0.25) == 2);
    CHECK(count_short_geodesics(d, 0.01) == 0);
    CHECK(count_short_geodesics(theta(0.1, 0.1, 0.1), 0.25) == 3);
    CHECK_THROWS_AS(count_short_geodesics(d, 0.0), DomainError);
    // threshold is strict: length exactly 2 eps is not short
    CHECK(count_short_geodesics(theta(0.5, 1, 1), 0.25) == 0);
}

TEST_CASE("thick components") {
    CHECK(thick_component_count(theta(1, 1, 1), 0.1) == 1);
    CHECK(thick_component_count(theta(0.01, 0.01, 0.01), 0.1) == 2);
    CHECK(thick_component_count(theta(0.01, 0.01, 1), 0.1) == 1);
}

TEST_CASE("self-loops never separate") {
    // genus 2 dumbbell: loop at each pants joined by a bridge
    auto d = SurfaceDescriptor::from_curves(2, {{"l0", 0.01, {0, 0}}, {"l1", 0.01, {1, 1}}, {"bridge", 1, {0, 1}}});
    REQUIRE(validate_descriptor(d).ok);
    CHECK(thick_component_count(d, 0.1) == 1);
    d.curves[2].length = 0.01;
    CHECK(thick_component_count(d, 0.1) == 2);
}

TEST_CASE("two-piece family splits into two halves") {
    for (int g : {2, 3, 5, 10, 40}) {
        const auto d = two_piece_family(g, 0.01, 1.0);
        REQUIRE(validate_descriptor(d).ok);
        CHECK(count_short_geodesics(d, 0.1) == g + 1);
        CHECK(thick_component_count(d, 0.1) == 2);
    }
}

TEST_CASE("necklace family stays connected") {
    for (int g : {2, 3, 10, 50}) {
        for (int n : {0, 1, g - 1}) {
            const auto d = necklace_family(g, n, 0.01, 1.0);
            REQUIRE(validate_descriptor(d).ok);
            CHECK(count_short_geodesics(d, 0.1) == n);
            CHECK(thick_component_count(d, 0.1) == 1);
        }
    }
    CHECK_THROWS_AS(necklace_family(3, 3, 0.01, 1.0), DomainError);
}

TEST_CASE("random multigraphs agree with the label-propagation oracle") {
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 2000; ++trial) {
        const int g = 2 + static_cast<int>(rng() % 11);
        const auto d = oracle::random_descriptor(g, rng);
        REQUIRE(validate_descriptor(d).ok);
        const double eps = std::uniform_real_distribution<double>(1e-3, 1.0)(rng);
        const int n = count_short_geodesics(d, eps);
        const int comps = thick_component_count(d, eps);
        REQUIRE(comps == oracle::components(d.pants_count, long_edges(d, eps)));
        REQUIRE(n <= 3 * g - 3);
        REQUIRE(comps >= 1);
        REQUIRE(comps <= n + 1);
    }
}

TEST_CASE("component count grows with eps") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto d = oracle::random_descriptor(2 + static_cast<int>(rng() % 8), rng);
        int prev = 1;
        for (int k = 1; k <= 40; ++k) {
            const int c = thick_component_count(d, 0.025 * k);
            REQUIRE(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("area budget") {
    const auto plain = theta(1, 1, 1);
    const auto r0 = area_budget(plain, 0.1, 1.0);
    CHECK(r0.total_area == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(r0.thin_area == 0.0);
    CHECK(r0.thick_components == 1);

    const double L = 2.0 * std::asinh(1.0);
    const auto r1 = area_budget(theta(L, 5, 5), 0.9, 0.0);
    REQUIRE(r1.n_short == 1);
    CHECK(r1.thin_area == doctest::Approx(3.525494348078172).epsilon(1e-14));

    const auto r2 = area_budget(theta(0.1, 5, 5), 0.1, 1.0);
    CHECK(r2.thin_area == doctest::Approx(1.465030028960699).epsilon(1e-14));
    CHECK(r2.per_collar[0].trimmed_width == doctest::Approx(2.689087757070663).epsilon(1e-14));

    CHECK_THROWS_AS(area_budget(theta(1.75, 5, 5), 0.9, 1.0), DomainError);
}

TEST_CASE("thin area matches quadrature of the Fermi area element") {
    for (double l : {1e-4, 1e-2, 0.1, 0.3, 0.5}) {
        const auto r = area_budget(theta(l, 5, 5), 0.3, 1.0);
        const double wt = collar::collar_width(l) - 1.0;
        // integral over rho in [-wt, wt] and t in [0, 1] of l cosh rho
        const double numeric = oracle::simpson([l](double rho) { return l * std::cosh(rho); }, -wt, wt);
        CHECK(r.thin_area == doctest::Approx(numeric).epsilon(1e-10));
    }
}

}
