#pragma once

#include <vector>

#include <Eigen/Core>

// Heat kernel of the hyperbolic plane and the majorants used to bound the
// automorphic kernel on a surface with injectivity radius >= 1.
//
// Curvature -1 kernel (McKean's integral representation):
//
//   k_t(rho) = sqrt(2) e^{-t/4} / (4 pi t)^{3/2}
//              * int_rho^inf s e^{-s^2/4t} / sqrt(cosh s - cosh rho) ds.
//
// Curvature -eps^2 kernel, by rescaling the metric by eps^{-2}:
//
//   k_{t,eps}(d) = eps^2 k_{eps^2 t}(eps d).

namespace hypermult::heat {

struct KernelQuery {
    double t = 1.0;
    double rho = 0.0;
    double eps = 1.0;
};

/// log k_t(rho), via the substitution s = rho + v^2 and adaptive Gauss-Kronrod.
/// Stays finite where k itself underflows (large rho, small t).
double log_kernel_curv_minus1(double t, double rho);

/// k_t(rho) on the curvature -1 plane. Domain: t in [1e-3, 1e3], rho in [0, 100].
double kernel_curv_minus1(double t, double rho);

/// Independent evaluation of log k_t(rho): tanh-sinh quadrature applied directly
/// to the singular integrand in s - rho. Used to cross-check the primary route.
double log_kernel_curv_minus1_tanh_sinh(double t, double rho);

/// eps^2 k_{eps^2 t}(eps rho).
double kernel_rescaled(const KernelQuery& q);
double log_kernel_rescaled(const KernelQuery& q);

/// int_0^inf k_{t,eps}(rho) (2 pi / eps) sinh(eps rho) d rho; equals 1.
double kernel_total_mass(double t, double eps = 1.0);

struct MajorantRow {
    double t, rho, kernel, gaussian_ratio;
};

struct GaussianMajorantReport {
    double eps = 1.0;
    double c_star = 0.0;  ///< max over the grid of k_{t,eps}(rho) exp(rho^2 / 8t)
    double t_at_max = 0.0;
    double rho_at_max = 0.0;
    bool finite = false;
    std::vector<MajorantRow> rows;
};

/// Scans k_{t,eps}(rho) exp(+rho^2/(8t)) on the tensor grid t_values x rho_values.
/// Requires every t >= 1.
GaussianMajorantReport gaussian_majorant_check(const Eigen::VectorXd& t_values, const Eigen::VectorXd& rho_values,
                                               double eps = 1.0);

struct MajorantSum {
    double sum = 0.0;          ///< sum_{m >= 0} exp(m - m^2 / 8t)
    double split_bound = 0.0;  ///< (4t+1) e^{2t} + e^{8t - ceil(4t)} / (1 - e^{-1})
    double tail_bound = 0.0;   ///< bound on the neglected terms
    int terms = 0;
};

/// Lattice-point majorant series for the automorphic kernel. t in [1, 50].
MajorantSum kernel_sum_majorant(double t);

/// max_t sum(t) e^{-4t} over the given times.
double majorant_growth_constant(const Eigen::VectorXd& t_values);

/// Ratio area(B(m + 3/2)) / area(B(1/2)) in curvature -eps^2: the count of
/// orbit points in the annulus m <= d < m + 1 when the injectivity radius is >= 1.
double annulus_count_bound(double eps, int m);

}  // namespace hypermult::heat
