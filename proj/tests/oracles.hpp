#pragma once

// Independent reference implementations used only by the tests. They are
// deliberately naive: fixed steps, brute force, no shared code with the library.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "hypermult/surface_model.hpp"

namespace oracle {

struct Rk4Track {
    std::vector<double> rho, u, du;
};

// Classic RK4 with a fixed step for u'' = V(rho) u from (u0, du0).
inline Rk4Track rk4(const std::function<double(double)>& V, double u0, double du0, double rho_max, double h) {
    Rk4Track t;
    const long n = static_cast<long>(std::ceil(rho_max / h));
    const double step = rho_max / n;
    double u = u0, du = du0;
    t.rho.push_back(0.0);
    t.u.push_back(u);
    t.du.push_back(du);
    for (long i = 0; i < n; ++i) {
        const double x = i * step;
        const double k1u = du, k1d = V(x) * u;
        const double k2u = du + 0.5 * step * k1d, k2d = V(x + 0.5 * step) * (u + 0.5 * step * k1u);
        const double k3u = du + 0.5 * step * k2d, k3d = V(x + 0.5 * step) * (u + 0.5 * step * k2u);
        const double k4u = du + step * k3d, k4d = V(x + step) * (u + step * k3u);
        u += step / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        du += step / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
        t.rho.push_back((i + 1) * step);
        t.u.push_back(u);
        t.du.push_back(du);
    }
    return t;
}

// Trapezoid integral of u^2 over the samples with rho <= x (x must be a sample point).
inline double trapezoid_mass(const Rk4Track& t, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < t.rho.size() && t.rho[i + 1] <= x + 1e-12; ++i)
        acc += 0.5 * (t.rho[i + 1] - t.rho[i]) * (t.u[i] * t.u[i] + t.u[i + 1] * t.u[i + 1]);
    return acc;
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Components by repeated label propagation: every vertex starts with its own
// label and each kept edge pulls both ends to the smaller label until nothing changes.
inline int components(int vertices, const std::vector<std::array<int, 2>>& edges) {
    std::vector<int> label(vertices);
    for (int v = 0; v < vertices; ++v) label[v] = v;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : edges) {
            const int m = std::min(label[e[0]], label[e[1]]);
            if (label[e[0]] != m || label[e[1]] != m) {
                label[e[0]] = label[e[1]] = m;
                changed = true;
            }
        }
    }
    int count = 0;
    for (int v = 0; v < vertices; ++v) count += label[v] == v;
    return count;
}

// Random connected cubic multigraph on 2g-2 vertices (configuration model,
// rejection on disconnection) with random lengths in (0, 2).
inline hypermult::SurfaceDescriptor random_descriptor(int genus, std::mt19937_64& rng) {
    const int pants = 2 * genus - 2;
    std::uniform_real_distribution<double> len(1e-3, 2.0);
    for (;;) {
        std::vector<int> stubs;
        for (int v = 0; v < pants; ++v)
            for (int k = 0; k < 3; ++k) stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<std::array<int, 2>> edges;
        for (std::size_t i = 0; i < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
        if (components(pants, edges) != 1) continue;
        std::vector<hypermult::Curve> curves;
        for (std::size_t i = 0; i < edges.size(); ++i)
            curves.push_back({"c" + std::to_string(i), len(rng), edges[i]});
        return hypermult::SurfaceDescriptor::from_curves(genus, std::move(curves));
    }
}

}  // namespace oracle
