#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "hypermult/errors.hpp"

namespace hypermult::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel kronrod_panel(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * kronrod_weights[7];
    double g = fc * gauss_weights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kronrod_nodes[static_cast<std::size_t>(i)];
        const double s = f(c - dx) + f(c + dx);
        k += kronrod_weights[static_cast<std::size_t>(i)] * s;
        if (i % 2 == 1) g += gauss_weights[static_cast<std::size_t>(i / 2)] * s;
    }
    return {a, b, k * h, std::abs((k - g) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// Bisects the panel with the largest error estimate until the summed estimate
/// drops below max(abs_tol, rel_tol |I|). Throws ConvergenceError when the
/// panel budget runs out first.
template <typename F>
Result adaptive_gauss_kronrod(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                              int max_panels = 4000) {
    std::priority_queue<detail::Panel> heap;
    auto first = detail::kronrod_panel(f, a, b);
    double value = first.value;
    double error = first.error;
    heap.push(first);
    int evaluations = 15;
    while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
        if (static_cast<int>(heap.size()) >= max_panels)
            throw ConvergenceError("adaptive_gauss_kronrod: panel budget exhausted");
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::kronrod_panel(f, worst.a, mid);
        auto right = detail::kronrod_panel(f, mid, worst.b);
        evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    value = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, evaluations};
}

/// Tanh-sinh (double exponential) quadrature of f(u) over u in [0, length].
///
/// Nodes crowd doubly-exponentially toward both ends, so integrable endpoint
/// singularities need no special treatment. The abscissa handed to f is the
/// distance from the left end, computed without cancellation so f can resolve
/// singular factors such as 1/sqrt(u).
template <typename F>
Result tanh_sinh(F&& f, double length, double rel_tol, int max_level = 12) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    constexpr double t_max = 4.0;

    // Contribution of the symmetric pair of nodes at +-t (or the centre at t = 0).
    auto pair = [&](double t) {
        const double q = half_pi * std::sinh(t);
        const double e = std::exp(-2.0 * q);
        const double frac = e / (1.0 + e);  // (1 - tanh q) / 2, the end distance fraction
        const double cq = std::cosh(q);
        const double weight = 0.5 * length * half_pi * std::cosh(t) / (cq * cq);
        if (!(weight > 0.0)) return 0.0;
        const double near = length * frac;
        if (t == 0.0) return weight * f(0.5 * length);
        return weight * (f(near) + f(length - near));
    };

    double h = 1.0;
    double sum = pair(0.0);
    for (double t = h; t <= t_max; t += h) sum += pair(t);
    double estimate = h * sum;
    int evaluations = 1 + 2 * static_cast<int>(t_max / h);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double fresh = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) fresh += pair(t);
        evaluations += 2 * static_cast<int>(t_max / (2.0 * h));
        sum += fresh;
        const double next = h * sum;
        const double change = std::abs(next - estimate);
        estimate = next;
        if (level >= 3 && change <= rel_tol * std::abs(estimate))
            return {estimate, change, evaluations};
    }
    throw ConvergenceError("tanh_sinh: refinement levels exhausted");
}

}  // namespace hypermult::quad
