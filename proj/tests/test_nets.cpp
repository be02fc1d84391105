#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hypermult/collar_geometry.hpp"
#include "hypermult/errors.hpp"
#include "hypermult/nets.hpp"

using namespace hypermult;
using namespace hypermult::nets;

namespace {

// Brute-force flags using the plain distance function.
NetCheck brute_force(const PointCloud& c, const std::vector<std::int64_t>& sel, double r) {
    NetCheck out{true, true};
    std::vector<Eigen::Index> rows;
    for (auto id : sel) rows.push_back(c.index_of(id));
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            if (c.distance(rows[a], rows[b]) < r - kDistanceTol) out.is_separated = false;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        double best = INFINITY;
        for (auto s : rows) best = std::min(best, c.distance(i, s));
        if (!(best <= r + kDistanceTol)) out.is_net = false;
    }
    return out;
}

}  // namespace

TEST_SUITE("nets") {

TEST_CASE("collinear points") {
    const auto line = geodesic_segment(1.0, 1.0, 5);
    for (Eigen::Index i = 0; i + 1 < 5; ++i) CHECK(line.distance(i, i + 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(line.distance(0, 4) == doctest::Approx(4.0).epsilon(1e-12));
    const auto net = greedy_separated_net(line, 2.0, 0);
    CHECK(net.selected == std::vector<std::int64_t>{0, 2, 4});
    CHECK(net.is_separated);
    CHECK(net.is_net);
    // the scan wraps around from the seed
    CHECK(greedy_separated_net(line, 2.0, 1).selected == std::vector<std::int64_t>{1, 3});
}

TEST_CASE("distance at curvature -eps^2") {
    const auto seg = geodesic_segment(0.25, 3.0, 3);
    CHECK(seg.distance(0, 2) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(seg.distance_to_origin(2) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(seg.distance(1, 1) == 0.0);
}

TEST_CASE("metric axioms on random triples") {
    const auto c = sample_hyperbolic_ball(0.5, 10.0, 300, 5);
    std::mt19937_64 rng(11);
    for (int k = 0; k < 1000; ++k) {
        const Eigen::Index a = rng() % 300, b = rng() % 300, d = rng() % 300;
        REQUIRE(c.distance(a, a) == 0.0);
        REQUIRE(c.distance(a, b) == doctest::Approx(c.distance(b, a)).epsilon(1e-12));
        REQUIRE(c.distance(a, d) <= c.distance(a, b) + c.distance(b, d) + 1e-9);
    }
}

TEST_CASE("sampler is deterministic and stays in the ball") {
    const auto a = sample_hyperbolic_ball(1.0, 5.0, 1000, 42);
    const auto b = sample_hyperbolic_ball(1.0, 5.0, 1000, 42);
    const auto c = sample_hyperbolic_ball(1.0, 5.0, 1000, 43);
    CHECK(a.points() == b.points());
    CHECK(a.points() != c.points());
    for (Eigen::Index i = 0; i < a.size(); ++i) REQUIRE(a.distance_to_origin(i) <= 5.0 + 1e-9);
    CHECK_THROWS_AS(sample_hyperbolic_ball(1.0, 21.0, 10, 0), DomainError);
    CHECK_THROWS_AS(sample_hyperbolic_ball(1.0, 5.0, 0, 0), DomainError);
    CHECK_NOTHROW(sample_hyperbolic_ball(0.5, 40.0, 10, 0));
}

TEST_CASE("sampler matches the radial density") {
    // mean of rho under density sinh(rho) on [0, 3], from mpmath quadrature
    const auto c = sample_hyperbolic_ball(1.0, 3.0, 100000, 2026);
    double mean = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) mean += c.distance_to_origin(i);
    mean /= c.size();
    CHECK(mean == doctest::Approx(2.226054640029847).epsilon(0.02));
    CHECK(mean == doctest::Approx(2.226054640029847).epsilon(0.005));
}

TEST_CASE("single point") {
    const auto c = sample_hyperbolic_ball(1.0, 2.0, 1, 9);
    const auto net = greedy_separated_net(c, 5.0, 0);
    CHECK(net.selected == std::vector<std::int64_t>{0});
    CHECK(net.is_net);
}

TEST_CASE("verify_net edge cases") {
    const auto c = sample_hyperbolic_ball(1.0, 3.0, 50, 1);
    std::vector<std::int64_t> all(50);
    for (int i = 0; i < 50; ++i) all[i] = i;
    const auto whole = verify_net(c, all, 1e-12);
    CHECK(whole.is_separated);
    CHECK(whole.is_net);
    CHECK_FALSE(verify_net(c, {}, 1.0).is_net);
    CHECK(verify_net(c, {}, 1.0).is_separated);
    CHECK_THROWS_AS(verify_net(c, {50}, 1.0), DomainError);
    CHECK_FALSE(verify_net(c, {3, 3}, 0.5).is_separated);
}

TEST_CASE("greedy output on random clouds") {
    for (int trial = 0; trial < 100; ++trial) {
        const double eps = trial % 2 ? 1.0 : 0.5;
        const auto c = sample_hyperbolic_ball(eps, 6.0, 200, 1000 + trial);
        const double r = 1.0 + (trial % 7);
        const auto net = greedy_separated_net(c, r, trial % 200);
        REQUIRE(net.is_separated);
        REQUIRE(net.is_net);
        const auto bf = brute_force(c, net.selected, r);
        REQUIRE(bf.is_separated);
        REQUIRE(bf.is_net);
    }
}

TEST_CASE("greedy output is maximal") {
    const auto c = sample_hyperbolic_ball(1.0, 8.0, 1000, 77);
    const double r = 4.0;
    const auto net = greedy_separated_net(c, r, 0);
    std::vector<bool> chosen(c.size(), false);
    for (auto id : net.selected) chosen[c.index_of(id)] = true;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (chosen[i]) continue;
        bool blocked = false;
        for (auto id : net.selected)
            if (c.distance(i, c.index_of(id)) < r) blocked = true;
        REQUIRE(blocked);
    }
}

TEST_CASE("deterministic output") {
    const auto c = sample_hyperbolic_ball(1.0, 7.0, 2000, 3);
    const auto a = greedy_separated_net(c, 4.0, 17);
    const auto b = greedy_separated_net(c, 4.0, 17);
    CHECK(a.selected == b.selected);
}

TEST_CASE("cardinality bound") {
    CHECK(net_cardinality_bound(std::numbers::pi, 16.0).value == 1.0);
    CHECK(net_cardinality_bound(100.0, 4.0).value == doctest::Approx(127.3239544735163).epsilon(1e-14));
    CHECK(net_cardinality_bound(100.0, 4.0).within_hypothesis);
    const auto out = net_cardinality_bound(100.0, 2.0);
    CHECK_FALSE(out.within_hypothesis);
    CHECK(out.value == doctest::Approx(1600.0 / (2.0 * std::numbers::pi)));
}

TEST_CASE("the large ball instance respects the bound") {
    const auto c = sample_hyperbolic_ball(1.0, 10.0, 10000, 0);
    const auto net = greedy_separated_net(c, 4.0, 0);
    const double area = 2.0 * std::numbers::pi * (std::cosh(10.0) - 1.0);
    CHECK(net.is_separated);
    CHECK(net.is_net);
    CHECK(static_cast<double>(net.selected.size()) <= 16.0 * area / (std::numbers::pi * 4.0));
    CHECK(collar::ball_area(1.0, 10.0) == doctest::Approx(area).epsilon(1e-14));
}

TEST_CASE("aggregate bound over thick components") {
    const int g = 10, n = 3;
    const double eps = 0.5, r1 = 4.0;
    const double total = 4.0 * std::numbers::pi * (g - 1) / (eps * eps);
    const auto b = aggregate_net_bound({0.5 * total, 0.3 * total, 1e-3, 0.1 * total}, r1, g, eps, n);
    CHECK(b.holds);
    CHECK(b.within_hypothesis);
    CHECK(b.ceiling == doctest::Approx(4.0 + 64.0 * 9.0 / (0.25 * 4.0)));
    CHECK(b.sum == doctest::Approx(1.0 + 16.0 * (0.9 * total) / (std::numbers::pi * 4.0)));
    CHECK_THROWS_AS(aggregate_net_bound({1, 1, 1, 1, 1}, r1, g, eps, n), DomainError);
    CHECK_THROWS_AS(aggregate_net_bound({total, total}, r1, g, eps, n), DomainError);
}

}
