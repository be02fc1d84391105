#pragma once

#include <cmath>
#include <numbers>

#include "hypermult/errors.hpp"

// Closed-form geometry of standard collars around simple closed geodesics.
//
// A collar of half-width w around a geodesic of length l carries Fermi
// coordinates (rho, t) in [-w, w] x R/Z with metric d rho^2 + l^2 cosh^2 rho dt^2.
// Everything here is templated on the scalar so the same expressions can be
// evaluated in double, long double, or an autodiff type.

namespace hypermult::collar {

/// Half-width of the standard (always embedded) collar: arcsinh(1 / sinh(l/2)).
template <typename Scalar>
Scalar collar_width(Scalar length) {
    using std::asinh;
    using std::sinh;
    if (!(length > Scalar(0)))
        throw DomainError("collar_width: length must be positive");
    return asinh(Scalar(1) / sinh(length / Scalar(2)));
}

/// Length of a boundary component of the collar of half-width `half_width`.
template <typename Scalar>
Scalar boundary_length(Scalar length, Scalar half_width) {
    using std::cosh;
    return length * cosh(half_width);
}

/// Area of the collar of half-width `half_width`: the integral of l cosh rho
/// over [-w', w'] x [0, 1].
template <typename Scalar>
Scalar collar_area(Scalar length, Scalar half_width) {
    using std::sinh;
    return Scalar(2) * length * sinh(half_width);
}

/// Injectivity radius at a point of the standard collar at distance `d` from
/// the collar boundary: sinh(inj) = cosh(l/2) cosh d - sinh d.
///
/// The right-hand side is evaluated as 2 sinh^2(l/4) cosh d + e^{-d}, which
/// avoids the cancellation of the printed form for short geodesics (d large).
template <typename Scalar>
Scalar injectivity_in_collar(Scalar length, Scalar dist_to_boundary) {
    using std::asinh;
    using std::cosh;
    using std::exp;
    using std::sinh;
    const Scalar w = collar_width(length);
    if (!(dist_to_boundary >= Scalar(0)) || dist_to_boundary > w)
        throw DomainError("injectivity_in_collar: distance outside [0, w]");
    const Scalar s = sinh(length / Scalar(4));
    return asinh(Scalar(2) * s * s * cosh(dist_to_boundary) + exp(-dist_to_boundary));
}

/// The injectivity floor on the boundary of the thin part, arcsinh(cosh 1 - sinh 1).
template <typename Scalar = double>
Scalar thick_injectivity_floor() {
    using std::asinh;
    using std::exp;
    return asinh(exp(Scalar(-1)));
}

/// Upper end of the admissible short-curve scale, arcsinh(1 / sinh 2) ~ 0.2723.
template <typename Scalar = double>
Scalar epsilon_ceiling() {
    using std::asinh;
    using std::sinh;
    return asinh(Scalar(1) / sinh(Scalar(2)));
}

/// eps(delta) = arcsinh(1 / sinh(1/delta + 2)), defined for delta in (0, 1/2).
template <typename Scalar>
Scalar eps_delta(Scalar delta) {
    using std::asinh;
    using std::sinh;
    if (!(delta > Scalar(0)) || !(delta < Scalar(0.5)))
        throw DomainError("eps_delta: delta must lie in (0, 1/2)");
    return asinh(Scalar(1) / sinh(Scalar(1) / delta + Scalar(2)));
}

/// Area of a geodesic ball of radius r in the plane of curvature -eps^2,
/// (2 pi / eps^2)(cosh(eps r) - 1), evaluated as (4 pi / eps^2) sinh^2(eps r / 2)
/// so the eps -> 0 limit (pi r^2) stays accurate.
template <typename Scalar>
Scalar ball_area(Scalar eps, Scalar radius) {
    using std::sinh;
    if (!(radius > Scalar(0)))
        throw DomainError("ball_area: radius must be positive");
    if (!(eps > Scalar(0)) || eps > Scalar(1))
        throw DomainError("ball_area: curvature scale must lie in (0, 1]");
    const Scalar s = sinh(eps * radius / Scalar(2));
    return Scalar(4) * std::numbers::pi_v<Scalar> * s * s / (eps * eps);
}

/// Per-curve collar summary.
struct CollarProfile {
    double length = 0.0;
    double width = 0.0;

    static CollarProfile of(double length) { return {length, collar_width(length)}; }

    double boundary_length_at(double half_width) const { return boundary_length(length, half_width); }
    double area_at(double half_width) const { return collar_area(length, half_width); }
};

}  // namespace hypermult::collar
