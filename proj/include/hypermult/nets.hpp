#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

// Separated sets and nets in the hyperbolic plane of curvature -eps^2, points
// held in the Poincare disk.

namespace hypermult::nets {

/// Distance tolerance used by the separation and covering tests.
inline constexpr double kDistanceTol = 1e-9;

class PointCloud {
public:
    PointCloud() = default;
    /// Disk coordinates (rows (x, y), |z| < 1); ids default to 0..n-1.
    PointCloud(double eps, Eigen::MatrixX2d points, std::vector<std::int64_t> ids = {});

    double eps() const { return eps_; }
    Eigen::Index size() const { return points_.rows(); }
    const Eigen::MatrixX2d& points() const { return points_; }
    const std::vector<std::int64_t>& ids() const { return ids_; }
    /// Row of a point id; -1 if absent.
    Eigen::Index index_of(std::int64_t id) const;

    /// Curvature -eps^2 distance between rows i and j.
    double distance(Eigen::Index i, Eigen::Index j) const;
    /// Distance from row i to the disk centre.
    double distance_to_origin(Eigen::Index i) const;

    // Used by the samplers, which know 1 - |z|^2 more accurately than it can
    // be recovered from z near the boundary.
    void set_conformal(Eigen::VectorXd one_minus_r2) { conformal_ = std::move(one_minus_r2); }

    /// 2|z_i - z_j|^2 / ((1 - |z_i|^2)(1 - |z_j|^2)) = cosh(eps d) - 1.
    double cosh_gap(Eigen::Index i, Eigen::Index j) const;

private:
    double eps_ = 1.0;
    Eigen::MatrixX2d points_;
    Eigen::VectorXd conformal_;
    std::vector<std::int64_t> ids_;
};

struct NetResult {
    std::vector<std::int64_t> selected;
    double r = 0.0;
    bool is_separated = false;
    bool is_net = false;
};

struct NetCheck {
    bool is_separated = false;
    bool is_net = false;
};

/// Maximal r-separated subset, scanning rows cyclically from seed_index.
NetResult greedy_separated_net(const PointCloud& cloud, double r, Eigen::Index seed_index = 0);

/// Pairwise separation (d >= r - tol) and covering (every point within r + tol).
NetCheck verify_net(const PointCloud& cloud, const std::vector<std::int64_t>& candidate, double r);

struct CardinalityBound {
    double value = 0.0;
    bool within_hypothesis = false;  ///< r >= 4
};

/// max{1, 16 area / (pi r)}.
CardinalityBound net_cardinality_bound(double area, double r);

struct AggregateBound {
    double sum = 0.0;      ///< sum_k max{1, 16 area_k / (pi r1)}
    double ceiling = 0.0;  ///< (N + 1) + 64 (g - 1) / (eps^2 r1)
    bool holds = false;
    bool within_hypothesis = false;
};

/// Net count over the thick components of a surface of curvature -eps^2.
/// component_areas must number at most n_short + 1 and total at most 4 pi (g - 1) / eps^2.
AggregateBound aggregate_net_bound(const std::vector<double>& component_areas, double r1, int genus,
                                   double eps, int n_short);

/// n area-uniform points in the ball of the given radius about the origin.
PointCloud sample_hyperbolic_ball(double eps, double radius, Eigen::Index n, std::uint64_t seed);

/// Points on a geodesic through the origin at distances 0, spacing, 2 spacing, ...
PointCloud geodesic_segment(double eps, double spacing, Eigen::Index n);

}  // namespace hypermult::nets
