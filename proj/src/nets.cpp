#include "hypermult/nets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>

#include "hypermult/errors.hpp"

namespace hypermult::nets {

namespace {

double uniform53(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// cosh(eps x) - 1 without cancellation for small arguments.
double cosh_minus_one(double eps, double x) {
    const double s = std::sinh(0.5 * eps * x);
    return 2.0 * s * s;
}

}  // namespace

PointCloud::PointCloud(double eps, Eigen::MatrixX2d points, std::vector<std::int64_t> ids)
    : eps_(eps), points_(std::move(points)), ids_(std::move(ids)) {
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("point cloud: eps must lie in (0, 1]");
    if (ids_.empty()) {
        ids_.resize(points_.rows());
        for (Eigen::Index i = 0; i < points_.rows(); ++i) ids_[i] = i;
    }
    if (static_cast<Eigen::Index>(ids_.size()) != points_.rows())
        throw DomainError("point cloud: id count does not match point count");
    std::unordered_map<std::int64_t, int> seen;
    for (auto id : ids_)
        if (seen[id]++) throw DomainError("point cloud: duplicate id " + std::to_string(id));
    conformal_.resize(points_.rows());
    for (Eigen::Index i = 0; i < points_.rows(); ++i) {
        const double r = points_.row(i).norm();
        if (!(r < 1.0)) throw DomainError("point cloud: point outside the unit disk");
        conformal_[i] = (1.0 - r) * (1.0 + r);
    }
}

Eigen::Index PointCloud::index_of(std::int64_t id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
        if (ids_[i] == id) return static_cast<Eigen::Index>(i);
    return -1;
}

double PointCloud::cosh_gap(Eigen::Index i, Eigen::Index j) const {
    return 2.0 * (points_.row(i) - points_.row(j)).squaredNorm() / (conformal_[i] * conformal_[j]);
}

double PointCloud::distance(Eigen::Index i, Eigen::Index j) const {
    const double x = cosh_gap(i, j);
    // acosh(1 + x) = log1p(x + sqrt(x (x + 2))), exact near x = 0.
    return std::log1p(x + std::sqrt(x * (x + 2.0))) / eps_;
}

double PointCloud::distance_to_origin(Eigen::Index i) const {
    const double r = points_.row(i).norm();
    return 2.0 * std::atanh(r) / eps_;
}

NetResult greedy_separated_net(const PointCloud& cloud, double r, Eigen::Index seed_index) {
    if (cloud.size() == 0) throw DomainError("greedy_separated_net: empty cloud");
    if (!(r > 0.0)) throw DomainError("greedy_separated_net: r must be positive");
    const Eigen::Index n = cloud.size();
    if (seed_index < 0 || seed_index >= n) throw DomainError("greedy_separated_net: seed index out of range");

    const double eps = cloud.eps();
    const double threshold = r > kDistanceTol ? cosh_minus_one(eps, r - kDistanceTol) : 0.0;
    std::vector<Eigen::Index> chosen;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index i = (seed_index + k) % n;
        bool far = true;
        for (Eigen::Index s : chosen)
            if (cloud.cosh_gap(i, s) < threshold) {
                far = false;
                break;
            }
        if (far) chosen.push_back(i);
    }

    NetResult result;
    result.r = r;
    for (Eigen::Index i : chosen) result.selected.push_back(cloud.ids()[i]);
    const NetCheck check = verify_net(cloud, result.selected, r);
    result.is_separated = check.is_separated;
    result.is_net = check.is_net;
    return result;
}

NetCheck verify_net(const PointCloud& cloud, const std::vector<std::int64_t>& candidate, double r) {
    std::unordered_map<std::int64_t, Eigen::Index> rows;
    rows.reserve(cloud.ids().size());
    for (std::size_t i = 0; i < cloud.ids().size(); ++i) rows.emplace(cloud.ids()[i], i);
    std::vector<Eigen::Index> sel;
    sel.reserve(candidate.size());
    for (auto id : candidate) {
        const auto it = rows.find(id);
        if (it == rows.end()) throw DomainError("verify_net: unknown point id " + std::to_string(id));
        sel.push_back(it->second);
    }

    const double eps = cloud.eps();
    const double lower = r > kDistanceTol ? cosh_minus_one(eps, r - kDistanceTol) : 0.0;
    const double upper = cosh_minus_one(eps, r + kDistanceTol);

    NetCheck out;
    out.is_separated = true;
    for (std::size_t a = 0; a < sel.size() && out.is_separated; ++a)
        for (std::size_t b = a + 1; b < sel.size(); ++b)
            if (sel[a] == sel[b] || cloud.cosh_gap(sel[a], sel[b]) < lower) {
                out.is_separated = false;
                break;
            }

    out.is_net = !sel.empty() || cloud.size() == 0;
    for (Eigen::Index i = 0; i < cloud.size() && out.is_net; ++i) {
        bool covered = false;
        for (Eigen::Index s : sel)
            if (cloud.cosh_gap(i, s) <= upper) {
                covered = true;
                break;
            }
        out.is_net = covered;
    }
    return out;
}

CardinalityBound net_cardinality_bound(double area, double r) {
    if (!(area > 0.0) || !std::isfinite(area)) throw DomainError("net_cardinality_bound: area must be positive");
    if (!(r > 0.0)) throw DomainError("net_cardinality_bound: r must be positive");
    return {std::max(1.0, 16.0 * area / (std::numbers::pi * r)), r >= 4.0};
}

AggregateBound aggregate_net_bound(const std::vector<double>& component_areas, double r1, int genus, double eps,
                                   int n_short) {
    if (genus < 2) throw DomainError("aggregate_net_bound: genus must be at least 2");
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("aggregate_net_bound: eps must lie in (0, 1]");
    if (n_short < 0) throw DomainError("aggregate_net_bound: n_short must be non-negative");
    if (!(r1 > 0.0)) throw DomainError("aggregate_net_bound: r1 must be positive");
    if (component_areas.empty() || component_areas.size() > static_cast<std::size_t>(n_short) + 1)
        throw DomainError("aggregate_net_bound: need between 1 and n_short + 1 components");
    const double total_area = 4.0 * std::numbers::pi * (genus - 1) / (eps * eps);
    double area_sum = 0.0;
    AggregateBound out;
    for (double a : component_areas) {
        out.sum += net_cardinality_bound(a, r1).value;
        area_sum += a;
    }
    if (area_sum > total_area * (1.0 + 1e-12))
        throw DomainError("aggregate_net_bound: component areas exceed the surface area");
    out.ceiling = (n_short + 1) + 64.0 * (genus - 1) / (eps * eps * r1);
    out.holds = out.sum <= out.ceiling;
    out.within_hypothesis = r1 >= 4.0;
    return out;
}

PointCloud sample_hyperbolic_ball(double eps, double radius, Eigen::Index n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample_hyperbolic_ball: n must be at least 1");
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("sample_hyperbolic_ball: eps must lie in (0, 1]");
    if (!(radius > 0.0 && radius <= 20.0 / eps)) throw DomainError("sample_hyperbolic_ball: radius outside (0, 20/eps]");

    std::mt19937_64 rng(seed);
    Eigen::MatrixX2d pts(n, 2);
    Eigen::VectorXd conformal(n);
    const double s_max = std::sinh(0.5 * eps * radius);
    for (Eigen::Index i = 0; i < n; ++i) {
        // Area inside radius rho is proportional to sinh^2(eps rho / 2).
        const double u = uniform53(rng);
        const double theta = 2.0 * std::numbers::pi * uniform53(rng);
        const double half = std::asinh(std::sqrt(u) * s_max);  // eps rho / 2
        const double t = std::tanh(half);
        pts(i, 0) = t * std::cos(theta);
        pts(i, 1) = t * std::sin(theta);
        const double sech = 1.0 / std::cosh(half);
        conformal[i] = sech * sech;
    }
    PointCloud cloud(eps, std::move(pts));
    cloud.set_conformal(std::move(conformal));
    return cloud;
}

PointCloud geodesic_segment(double eps, double spacing, Eigen::Index n) {
    if (n < 1) throw DomainError("geodesic_segment: n must be at least 1");
    if (!(spacing > 0.0)) throw DomainError("geodesic_segment: spacing must be positive");
    Eigen::MatrixX2d pts = Eigen::MatrixX2d::Zero(n, 2);
    Eigen::VectorXd conformal(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double half = 0.5 * eps * spacing * static_cast<double>(i);
        pts(i, 0) = std::tanh(half);
        const double sech = 1.0 / std::cosh(half);
        conformal[i] = sech * sech;
    }
    PointCloud cloud(eps, std::move(pts));
    cloud.set_conformal(std::move(conformal));
    return cloud;
}

}  // namespace hypermult::nets
