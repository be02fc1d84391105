#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

// Fourier modes of an eigenfunction restricted to a standard collar.
//
// For the j-th Fourier coefficient a_j(rho) of a lambda-eigenfunction on the
// collar of a geodesic of length l, u = sqrt(cosh rho) a_j solves
//
//   u'' = V(rho) u,   V(rho) = 1/4 - lambda + (1/4 + 4 pi^2 j^2 / l^2) / cosh^2 rho.
//
// phi and psi are the fundamental solutions with phi(0) = psi'(0) = 0 and
// phi'(0) = psi(0) = 1. Their Wronskian phi psi' - phi' psi is identically -1.

namespace hypermult::modes {

struct ModeProblem {
    double length = 1.0;    ///< l(gamma)
    double lambda = 0.0;    ///< eigenvalue
    int mode_index = 0;     ///< Fourier index j
    double rho_max = 1.0;   ///< integration endpoint, usually the collar width
    std::vector<double> stops;  ///< interior points the grid must contain

    double potential(double rho) const;
};

enum class Fundamental { phi, psi };

/// Samples of one fundamental solution. Values carry a base-2 exponent so the
/// track stays representable when the solution outgrows double range:
/// u(grid[i]) = value[i] * 2^exponent[i], likewise derivative and the running
/// mass int_0^{grid[i]} u^2 (which carries 2^{2 exponent[i]}).
struct ScaledTrack {
    Eigen::VectorXd value;
    Eigen::VectorXd derivative;
    Eigen::VectorXd mass;
    Eigen::VectorXi exponent;

    double at(Eigen::Index i) const { return std::ldexp(value[i], exponent[i]); }
    double derivative_at(Eigen::Index i) const { return std::ldexp(derivative[i], exponent[i]); }
    /// log |u(grid[i])|
    double log_abs(Eigen::Index i) const { return std::log(std::abs(value[i])) + exponent[i] * std::numbers::ln2; }
};

struct ModeSolution {
    ModeProblem problem;
    double tol = 0.0;
    Eigen::VectorXd grid;
    ScaledTrack phi;
    ScaledTrack psi;
    /// max over the grid of |W + 1|, where W is the Wronskian of the computed
    /// solutions, accumulated as -prod det(step propagator).
    double wronskian_drift = 0.0;
    int steps = 0;
    int rejected = 0;

    const ScaledTrack& track(Fundamental f) const { return f == Fundamental::phi ? phi : psi; }
    /// phi psi' - phi' psi evaluated directly from the samples at grid[i].
    /// Only meaningful while the solutions stay moderate in size.
    double direct_wronskian(Eigen::Index i) const;
};

/// Adaptive Dormand-Prince 5(4) integration of both fundamental solutions.
/// tol in [1e-12, 1e-4], 0 < rho_max <= 50.
/// Throws DomainError for bad parameters or a non-finite potential,
/// ConvergenceError when the step budget runs out.
ModeSolution solve_mode(const ModeProblem& problem, double tol);

/// int_0^a u^2 / int_0^b u^2 for u = phi or psi, 0 <= a <= b <= rho_max, b > 0.
/// Points off the grid are reached by a dense sub-step from the previous node.
double mass_ratio(const ModeSolution& s, Fundamental which, double a, double b);

/// The same ratio from the grid samples alone: composite trapezoid with the
/// Euler-Maclaurin end correction (uses u and u' at the nodes). Both a and b
/// must be grid nodes. Serves as an independent cross-check of mass_ratio.
double mass_ratio_composite(const ModeSolution& s, Fundamental which, double a, double b);

/// int_0^{w-trim} cosh^2(delta rho) / int_0^w cosh^2(delta rho), closed form.
double cosh_ratio(double w, double trim, double delta);

/// 4 (floor(sqrt(lambda)) + 1) n_short: dimension of the span of the low collar modes.
long fourier_codimension(double lambda, int n_short);

/// Smallest Fourier index covered by the mass-concentration estimate, floor(sqrt(lambda)) + 1.
int first_concentrating_mode(double lambda);

// Certification sweep of the collar mass-concentration estimate.

struct MassSweepConfig {
    std::vector<double> lengths;
    std::vector<double> lambdas;
    int modes_per_lambda = 4;   ///< j = floor(sqrt(lambda)) + 1 ... + modes_per_lambda
    double tol = 1e-10;
    int domination_samples = 8; ///< interior points a in (0, w-1] checked against the cosh comparison
    double perturb_ratio = 1.0; ///< fault injection: multiplies the measured ratios
};

struct MassSweepRow {
    double length = 0.0;
    double lambda = 0.0;
    int j = 0;
    double width = 0.0;
    double ratio_phi = 0.0;
    double ratio_psi = 0.0;
    double bound = 0.0;           ///< 4 / e^2
    double cosh_comparison = 0.0; ///< cosh_ratio(w, 1, 1)
    double wronskian_drift = 0.0;
    double composite_gap = 0.0;   ///< max relative gap to mass_ratio_composite
    bool below_bound = false;
    bool dominated = false;
    bool wronskian_ok = false;
    bool composite_ok = false;
    bool phi_above_sinh = false;  ///< phi(rho) >= sinh(rho) at every node
    bool pass = false;
};

/// Default grid: l in {0.05, ..., 1.0}, lambda in {0, 0.11, ..., 0.99}.
MassSweepConfig default_mass_sweep();

std::vector<MassSweepRow> mass_concentration_sweep(const MassSweepConfig& config);

}  // namespace hypermult::modes
