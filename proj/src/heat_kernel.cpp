#include "hypermult/heat_kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hypermult/collar_geometry.hpp"
#include "hypermult/errors.hpp"
#include "hypermult/quadrature.hpp"

namespace hypermult::heat {

namespace {

constexpr double kInnerRelTol = 1e-13;
// Integrands are cut where the Gaussian factor has fallen by e^{-70}.
constexpr double kGaussianCut = 70.0;

void check_domain(double t, double rho) {
    if (!(t >= 1e-3 && t <= 1e3)) throw DomainError("heat kernel: t outside [1e-3, 1e3]");
    if (!(rho >= 0.0 && rho <= 100.0)) throw DomainError("heat kernel: rho outside [0, 100]");
}

// log of sqrt(2) e^{-t/4} / (4 pi t)^{3/2} e^{-rho^2 / 4t}
double log_prefactor(double t, double rho) {
    return 0.5 * std::log(2.0) - 0.25 * t - 1.5 * std::log(4.0 * std::numbers::pi * t) - rho * rho / (4.0 * t);
}

// Width u* in s - rho beyond which e^{-(2 rho u + u^2)/4t} < e^{-cut}.
double gaussian_extent(double t, double rho) {
    const double c = 4.0 * t * kGaussianCut;
    return c / (rho + std::sqrt(rho * rho + c));
}

}  // namespace

double log_kernel_curv_minus1(double t, double rho) {
    check_domain(t, rho);
    auto integrand = [t, rho](double v) {
        const double u = v * v;
        if (u == 0.0) return rho == 0.0 ? 0.0 : 2.0 * rho * std::sqrt(2.0) / std::sqrt(2.0 * std::sinh(rho));
        const double gauss = std::exp(-(2.0 * rho * u + u * u) / (4.0 * t));
        // v / sqrt(sinh(v^2/2)) -> sqrt(2) as v -> 0
        const double ratio = v / std::sqrt(std::sinh(0.5 * u));
        return 2.0 * (rho + u) * gauss * ratio / std::sqrt(2.0 * std::sinh(rho + 0.5 * u));
    };
    const double v_max = std::sqrt(gaussian_extent(t, rho));
    const auto r = quad::adaptive_gauss_kronrod(integrand, 0.0, v_max, kInnerRelTol);
    return log_prefactor(t, rho) + std::log(r.value);
}

double kernel_curv_minus1(double t, double rho) { return std::exp(log_kernel_curv_minus1(t, rho)); }

double log_kernel_curv_minus1_tanh_sinh(double t, double rho) {
    check_domain(t, rho);
    auto integrand = [t, rho](double u) {
        const double gauss = std::exp(-(2.0 * rho * u + u * u) / (4.0 * t));
        // cosh(rho + u) - cosh(rho) = 2 sinh(rho + u/2) sinh(u/2)
        return (rho + u) * gauss / std::sqrt(2.0 * std::sinh(rho + 0.5 * u) * std::sinh(0.5 * u));
    };
    const auto r = quad::tanh_sinh(integrand, gaussian_extent(t, rho), 1e-12);
    return log_prefactor(t, rho) + std::log(r.value);
}

double log_kernel_rescaled(const KernelQuery& q) {
    if (!(q.eps > 0.0 && q.eps <= 1.0)) throw DomainError("heat kernel: eps outside (0, 1]");
    if (!(q.t > 0.0)) throw DomainError("heat kernel: t must be positive");
    if (!(q.rho >= 0.0)) throw DomainError("heat kernel: rho must be non-negative");
    return 2.0 * std::log(q.eps) + log_kernel_curv_minus1(q.eps * q.eps * q.t, q.eps * q.rho);
}

double kernel_rescaled(const KernelQuery& q) { return std::exp(log_kernel_rescaled(q)); }

double kernel_total_mass(double t, double eps) {
    // The integrand peaks near eps rho = eps^2 t; cut once log(k sinh) has
    // dropped by ~60 below its peak.
    const double tau = eps * eps * t;
    const double x_cut = std::min(100.0, tau + std::sqrt(2.0 * tau * tau + 4.0 * tau * 60.0) + 10.0);
    auto density = [t, eps](double rho) {
        if (rho == 0.0) return 0.0;
        const double lk = log_kernel_rescaled({t, rho, eps});
        return std::exp(lk) * 2.0 * std::numbers::pi * std::sinh(eps * rho) / eps;
    };
    return quad::adaptive_gauss_kronrod(density, 0.0, x_cut / eps, 1e-11).value;
}

GaussianMajorantReport gaussian_majorant_check(const Eigen::VectorXd& t_values, const Eigen::VectorXd& rho_values,
                                               double eps) {
    GaussianMajorantReport report;
    report.eps = eps;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < t_values.size(); ++i) {
        const double t = t_values[i];
        if (!(t >= 1.0)) throw DomainError("gaussian_majorant_check: t must be >= 1");
        for (Eigen::Index j = 0; j < rho_values.size(); ++j) {
            const double rho = rho_values[j];
            const double lk = log_kernel_rescaled({t, rho, eps});
            const double log_ratio = lk + rho * rho / (8.0 * t);
            report.rows.push_back({t, rho, std::exp(lk), std::exp(log_ratio)});
            if (log_ratio > best) {
                best = log_ratio;
                report.t_at_max = t;
                report.rho_at_max = rho;
            }
        }
    }
    report.c_star = std::exp(best);
    report.finite = std::isfinite(report.c_star);
    return report;
}

MajorantSum kernel_sum_majorant(double t) {
    if (!(t >= 1.0 && t <= 50.0)) throw DomainError("kernel_sum_majorant: t outside [1, 50]");
    MajorantSum out;
    // Terms peak at m = 4t with value e^{2t}. Past m = 4t successive ratios are
    // exp(1 - (2m+1)/8t) < 1, which bounds the tail geometrically.
    double sum = 0.0;
    int m = 0;
    for (;; ++m) {
        const double md = m;
        const double term = std::exp(md - md * md / (8.0 * t));
        sum += term;
        if (md > 4.0 * t) {
            const double r = std::exp(1.0 - (2.0 * md + 3.0) / (8.0 * t));
            const double next = term * std::exp(1.0 - (2.0 * md + 1.0) / (8.0 * t));
            const double tail = next / (1.0 - r);
            if (tail < 1e-17 * sum) {
                out.tail_bound = tail;
                break;
            }
        }
    }
    out.sum = sum;
    out.terms = m + 1;
    out.split_bound = (4.0 * t + 1.0) * std::exp(2.0 * t) + std::exp(8.0 * t - std::ceil(4.0 * t)) / (1.0 - std::exp(-1.0));
    return out;
}

double majorant_growth_constant(const Eigen::VectorXd& t_values) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < t_values.size(); ++i)
        best = std::max(best, kernel_sum_majorant(t_values[i]).sum * std::exp(-4.0 * t_values[i]));
    return best;
}

double annulus_count_bound(double eps, int m) {
    if (m < 0) throw DomainError("annulus_count_bound: m must be non-negative");
    return collar::ball_area(eps, m + 1.5) / collar::ball_area(eps, 0.5);
}

}  // namespace hypermult::heat
