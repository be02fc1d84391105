#include "hypermult/mode_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypermult/collar_geometry.hpp"
#include "hypermult/errors.hpp"
#include "hypermult/parallel.hpp"

namespace hypermult::modes {

namespace {

// Augmented state integrated over one step, starting from (I, 0):
//   [0..3]  propagator P, column-major (P00, P10, P01, P11)
//   [4..6]  Q = int P^T e1 e1^T P:  (Q00, Q01, Q11)
// For a column (u, u') at the step start, P maps it to the step end and
// (u, u') Q (u, u')^T is int u^2 over the step.
using State = Eigen::Matrix<double, 7, 1>;

State rhs(double v, const State& y) {
    State d;
    d << y[1], v * y[0], y[3], v * y[2], y[0] * y[0], y[0] * y[2], y[2] * y[2];
    return d;
}

struct Step {
    State y;
    double error_norm;
};

// Dormand-Prince 5(4), one step of length h from rho starting at (I, 0).
Step dp45_step(const ModeProblem& p, double rho, double h, double tol) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    State y0;
    y0 << 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0;
    const State k1 = rhs(p.potential(rho), y0);
    const State k2 = rhs(p.potential(rho + c2 * h), y0 + h * (a21 * k1));
    const State k3 = rhs(p.potential(rho + c3 * h), y0 + h * (a31 * k1 + a32 * k2));
    const State k4 = rhs(p.potential(rho + c4 * h), y0 + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const State k5 = rhs(p.potential(rho + c5 * h), y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const State k6 =
        rhs(p.potential(rho + h), y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const State y1 = y0 + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = rhs(p.potential(rho + h), y1);
    const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double acc = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double scale = tol * (1.0 + std::max(std::abs(y0[i]), std::abs(y1[i])));
        const double r = err[i] / scale;
        acc += r * r;
    }
    // Error per unit step: local errors add up along the grid, so each step
    // gets the share of tol proportional to its length. That share is floored
    // at a few ulps, below which the estimate is rounding noise.
    constexpr double kLocalFloor = 16.0 * std::numeric_limits<double>::epsilon();
    return {y1, std::sqrt(acc / 7.0) / std::max(h / p.rho_max, kLocalFloor / tol)};
}

struct Column {
    double u, du, mass;
    int exponent;
};

// Advances a column through the step propagator and renormalises by a power
// of two once its magnitude leaves [2^-256, 2^256].
Column advance(const Column& c, const State& y) {
    Column out;
    out.u = y[0] * c.u + y[2] * c.du;
    out.du = y[1] * c.u + y[3] * c.du;
    out.mass = c.mass + y[4] * c.u * c.u + 2.0 * y[5] * c.u * c.du + y[6] * c.du * c.du;
    out.exponent = c.exponent;
    const double mag = std::max(std::abs(out.u), std::abs(out.du));
    if (mag > 0x1p256 || (mag > 0.0 && mag < 0x1p-256)) {
        int shift = 0;
        std::frexp(mag, &shift);
        out.u = std::ldexp(out.u, -shift);
        out.du = std::ldexp(out.du, -shift);
        out.mass = std::ldexp(out.mass, -2 * shift);
        out.exponent += shift;
    }
    return out;
}

Column column_at(const ScaledTrack& t, Eigen::Index i) {
    return {t.value[i], t.derivative[i], t.mass[i], t.exponent[i]};
}

void store(ScaledTrack& t, Eigen::Index i, const Column& c) {
    t.value[i] = c.u;
    t.derivative[i] = c.du;
    t.mass[i] = c.mass;
    t.exponent[i] = c.exponent;
}

void resize(ScaledTrack& t, Eigen::Index n) {
    t.value.conservativeResize(n);
    t.derivative.conservativeResize(n);
    t.mass.conservativeResize(n);
    t.exponent.conservativeResize(n);
}

// Node index whose abscissa equals x up to rounding, or -1.
Eigen::Index node_index(const Eigen::VectorXd& grid, double x) {
    const double slack = 1e-13 * std::max(1.0, grid[grid.size() - 1]);
    const auto* begin = grid.data();
    const auto* end = begin + grid.size();
    const auto* it = std::lower_bound(begin, end, x - slack);
    if (it != end && std::abs(*it - x) <= slack) return it - begin;
    return -1;
}

// log int_0^x u^2, reaching off-grid x by sub-stepping from the previous node.
double log_mass_at(const ModeSolution& s, Fundamental which, double x) {
    const ScaledTrack& t = s.track(which);
    Eigen::Index i = node_index(s.grid, x);
    Column c;
    if (i >= 0) {
        c = column_at(t, i);
    } else {
        const auto* begin = s.grid.data();
        i = (std::upper_bound(begin, begin + s.grid.size(), x) - begin) - 1;
        c = column_at(t, i);
        double rho = s.grid[i];
        // The gap is shorter than the accepted step that spanned it; split it
        // further anyway so the sub-step error stays below tol.
        const double gap = x - rho;
        const int pieces = 4;
        for (int k = 0; k < pieces; ++k) {
            const double h = gap / pieces;
            c = advance(c, dp45_step(s.problem, rho, h, s.tol).y);
            rho += h;
        }
    }
    if (c.mass <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(c.mass) + 2.0 * c.exponent * std::numbers::ln2;
}

void check_interval(const ModeSolution& s, double a, double b) {
    if (!(b > 0.0)) throw DomainError("mass_ratio: empty denominator interval (b = 0)");
    if (!(a >= 0.0)) throw DomainError("mass_ratio: a must be non-negative");
    if (a > b) throw DomainError("mass_ratio: a exceeds b");
    if (b > s.problem.rho_max * (1.0 + 1e-14)) throw DomainError("mass_ratio: b exceeds rho_max");
}

}  // namespace

double ModeProblem::potential(double rho) const {
    const double c = std::cosh(rho);
    const double freq = 2.0 * std::numbers::pi * mode_index / length;
    return 0.25 - lambda + (0.25 + freq * freq) / (c * c);
}

double ModeSolution::direct_wronskian(Eigen::Index i) const {
    return phi.at(i) * psi.derivative_at(i) - phi.derivative_at(i) * psi.at(i);
}

ModeSolution solve_mode(const ModeProblem& problem, double tol) {
    if (!(tol >= 1e-12 && tol <= 1e-4)) throw DomainError("solve_mode: tol outside [1e-12, 1e-4]");
    if (!(problem.rho_max > 0.0 && problem.rho_max <= 50.0)) throw DomainError("solve_mode: rho_max outside (0, 50]");
    if (!(problem.length > 0.0)) throw DomainError("solve_mode: length must be positive");
    if (!(problem.lambda >= 0.0)) throw DomainError("solve_mode: lambda must be non-negative");
    if (problem.mode_index < 0) throw DomainError("solve_mode: mode index must be non-negative");
    // V is monotone in rho, so its extremes sit at the ends.
    if (!std::isfinite(problem.potential(0.0)) || !std::isfinite(problem.potential(problem.rho_max)))
        throw DomainError("solve_mode: potential is not finite");

    std::vector<double> stops;
    for (double x : problem.stops)
        if (x > 0.0 && x < problem.rho_max) stops.push_back(x);
    stops.push_back(problem.rho_max);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

    ModeSolution s;
    s.problem = problem;
    s.tol = tol;

    Eigen::Index capacity = 1024;
    s.grid.resize(capacity);
    resize(s.phi, capacity);
    resize(s.psi, capacity);
    s.grid[0] = 0.0;
    Column phi{0.0, 1.0, 0.0, 0};
    Column psi{1.0, 0.0, 0.0, 0};
    store(s.phi, 0, phi);
    store(s.psi, 0, psi);

    constexpr int kMaxSteps = 4'000'000;
    double log_det = 0.0;
    double rho = 0.0;
    Eigen::Index n = 1;
    std::size_t next_stop = 0;
    double h = std::min(problem.rho_max, 0.05 / std::sqrt(1.0 + std::abs(problem.potential(0.0))));

    while (next_stop < stops.size()) {
        if (s.steps + s.rejected >= kMaxSteps) throw ConvergenceError("solve_mode: step budget exhausted");
        const double target = stops[next_stop];
        const bool lands = rho + h >= target * (1.0 - 1e-15);
        const double trial = lands ? target - rho : h;
        const Step step = dp45_step(problem, rho, trial, tol);
        if (!std::isfinite(step.error_norm) || step.error_norm > 1.0) {
            ++s.rejected;
            const double factor = std::isfinite(step.error_norm) ? 0.9 * std::pow(step.error_norm, -0.25) : 0.2;
            h = trial * std::clamp(factor, 0.2, 0.9);
            continue;
        }
        ++s.steps;
        rho = lands ? target : rho + trial;
        if (lands) ++next_stop;
        phi = advance(phi, step.y);
        psi = advance(psi, step.y);
        log_det += std::log(step.y[0] * step.y[3] - step.y[1] * step.y[2]);
        s.wronskian_drift = std::max(s.wronskian_drift, std::abs(std::expm1(log_det)));

        if (n == capacity) {
            capacity *= 2;
            s.grid.conservativeResize(capacity);
            resize(s.phi, capacity);
            resize(s.psi, capacity);
        }
        s.grid[n] = rho;
        store(s.phi, n, phi);
        store(s.psi, n, psi);
        ++n;

        const double grow = step.error_norm > 0.0 ? 0.9 * std::pow(step.error_norm, -0.25) : 5.0;
        // A step clipped to land on a stop says little about the natural size.
        h = std::max(h, trial) * std::clamp(grow, 0.2, 5.0);
    }

    s.grid.conservativeResize(n);
    resize(s.phi, n);
    resize(s.psi, n);
    return s;
}

double mass_ratio(const ModeSolution& s, Fundamental which, double a, double b) {
    check_interval(s, a, b);
    if (a == b) return 1.0;
    if (a == 0.0) return 0.0;
    return std::exp(log_mass_at(s, which, a) - log_mass_at(s, which, b));
}

double mass_ratio_composite(const ModeSolution& s, Fundamental which, double a, double b) {
    check_interval(s, a, b);
    const Eigen::Index ia = node_index(s.grid, a);
    const Eigen::Index ib = node_index(s.grid, b);
    if (ia < 0 || ib < 0) throw DomainError("mass_ratio_composite: a and b must be grid nodes");
    if (ia == ib) return 1.0;
    const ScaledTrack& t = s.track(which);

    // Running integral of u^2, held in the scale 2^{2 exponent[i]} of the current node.
    double acc = 0.0;
    double at_a = 0.0;
    int exp_a = t.exponent[0];
    for (Eigen::Index i = 0; i < ib; ++i) {
        if (i == ia) {
            at_a = acc;
            exp_a = t.exponent[i];
        }
        const int e1 = t.exponent[i + 1];
        const int shift = t.exponent[i] - e1;
        const double u0 = std::ldexp(t.value[i], shift);
        const double d0 = std::ldexp(t.derivative[i], shift);
        const double u1 = t.value[i + 1];
        const double d1 = t.derivative[i + 1];
        const double h = s.grid[i + 1] - s.grid[i];
        const double f0 = u0 * u0, f1 = u1 * u1;
        const double g0 = 2.0 * u0 * d0, g1 = 2.0 * u1 * d1;
        acc = std::ldexp(acc, 2 * shift) + 0.5 * h * (f0 + f1) + h * h / 12.0 * (g0 - g1);
    }
    if (ia == 0) return 0.0;
    return std::exp(std::log(at_a) - std::log(acc) + 2.0 * (exp_a - t.exponent[ib]) * std::numbers::ln2);
}

double cosh_ratio(double w, double trim, double delta) {
    if (!(delta > 0.0)) throw DomainError("cosh_ratio: delta must be positive");
    if (!(trim >= 0.0)) throw DomainError("cosh_ratio: trim must be non-negative");
    if (!(trim < w)) throw DomainError("cosh_ratio: trim must be below w");
    // F(x) = x/2 + sinh(2 delta x)/(4 delta), both terms scaled by e^{-2 delta w}.
    const auto scaled = [w, delta](double x) {
        return 0.5 * x * std::exp(-2.0 * delta * w) +
               (std::exp(2.0 * delta * (x - w)) - std::exp(-2.0 * delta * (x + w))) / (8.0 * delta);
    };
    return scaled(w - trim) / scaled(w);
}

int first_concentrating_mode(double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("lambda must be non-negative");
    return static_cast<int>(std::floor(std::sqrt(lambda))) + 1;
}

long fourier_codimension(double lambda, int n_short) {
    if (n_short < 0) throw DomainError("fourier_codimension: n_short must be non-negative");
    return 4L * first_concentrating_mode(lambda) * n_short;
}

MassSweepConfig default_mass_sweep() {
    MassSweepConfig c;
    for (int i = 1; i <= 20; ++i) c.lengths.push_back(0.05 * i);
    for (int i = 0; i <= 9; ++i) c.lambdas.push_back(0.11 * i);
    return c;
}

std::vector<MassSweepRow> mass_concentration_sweep(const MassSweepConfig& config) {
    struct Cell {
        double length, lambda;
        int j;
    };
    std::vector<Cell> cells;
    for (double l : config.lengths)
        for (double lambda : config.lambdas) {
            const int j0 = first_concentrating_mode(lambda);
            for (int k = 0; k < config.modes_per_lambda; ++k) cells.push_back({l, lambda, j0 + k});
        }

    const double bound = 4.0 / std::exp(2.0);
    constexpr double slack = 1e-9;
    std::vector<MassSweepRow> rows(cells.size());
    parallel_for(cells.size(), [&](std::size_t idx) {
        const Cell& cell = cells[idx];
        MassSweepRow row;
        row.length = cell.length;
        row.lambda = cell.lambda;
        row.j = cell.j;
        row.width = collar::collar_width(cell.length);
        row.bound = bound;
        row.cosh_comparison = cosh_ratio(row.width, 1.0, 1.0);

        const double trimmed = row.width - 1.0;
        ModeProblem p{cell.length, cell.lambda, cell.j, row.width, {trimmed}};
        const ModeSolution s = solve_mode(p, config.tol);
        row.wronskian_drift = s.wronskian_drift;
        row.wronskian_ok = s.wronskian_drift <= 10.0 * config.tol;

        row.ratio_phi = config.perturb_ratio * mass_ratio(s, Fundamental::phi, trimmed, row.width);
        row.ratio_psi = config.perturb_ratio * mass_ratio(s, Fundamental::psi, trimmed, row.width);
        row.below_bound = std::max(row.ratio_phi, row.ratio_psi) <= bound + slack;

        row.composite_ok = true;
        for (Fundamental f : {Fundamental::phi, Fundamental::psi}) {
            const double measured = f == Fundamental::phi ? row.ratio_phi : row.ratio_psi;
            const double reference = mass_ratio_composite(s, f, trimmed, row.width);
            const double gap = std::abs(measured - reference) / reference;
            row.composite_gap = std::max(row.composite_gap, gap);
        }
        row.composite_ok = row.composite_gap <= 1e-6;

        row.dominated = true;
        for (int k = 1; k <= config.domination_samples; ++k) {
            const double a = trimmed * k / config.domination_samples;
            const double comparison = cosh_ratio(row.width, row.width - a, 1.0);
            for (Fundamental f : {Fundamental::phi, Fundamental::psi})
                if (config.perturb_ratio * mass_ratio(s, f, a, row.width) > comparison + slack) row.dominated = false;
        }
        // u'' = V u with V >= 1 dominates sinh, which solves u'' = u from the same data.
        row.phi_above_sinh = true;
        for (Eigen::Index i = 1; i < s.grid.size(); ++i) {
            const double x = s.grid[i];
            const double log_sinh = x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
            if (s.phi.log_abs(i) < log_sinh - 1e-9 || s.phi.value[i] <= 0.0) row.phi_above_sinh = false;
        }
        row.pass = row.below_bound && row.dominated && row.wronskian_ok && row.composite_ok && row.phi_above_sinh;
        rows[idx] = row;
    });
    return rows;
}

}  // namespace hypermult::modes
