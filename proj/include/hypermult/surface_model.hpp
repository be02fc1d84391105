#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hypermult/collar_geometry.hpp"

// Combinatorial stand-in for a closed hyperbolic surface: a pants decomposition
// encoded as a cubic multigraph (vertices = pairs of pants, edges = the 3g-3
// decomposing curves, each with its hyperbolic length). Twist parameters are
// not represented.

namespace hypermult {

struct Curve {
    std::string id;
    double length = 0.0;
    std::array<int, 2> ends{0, 0};  ///< pants ids; equal ends make a self-loop

    bool is_loop() const { return ends[0] == ends[1]; }
};

struct SurfaceDescriptor {
    int genus = 0;
    std::vector<Curve> curves;
    /// Number of pants referenced by the curves (largest pants id + 1).
    int pants_count = 0;

    /// Builds a descriptor and derives `pants_count` from the curve ends.
    static SurfaceDescriptor from_curves(int genus, std::vector<Curve> curves);
};

struct ValidationResult {
    bool ok = true;
    std::string invariant;  ///< name of the first violated invariant, empty if ok
    std::string message;

    explicit operator bool() const { return ok; }
};

/// Checks, in order: "genus", "curve count", "pants count", "pants id",
/// "length", "degree", "connectivity".
ValidationResult validate_descriptor(const SurfaceDescriptor& d);

/// Throws SchemaError carrying the first violated invariant.
void require_valid(const SurfaceDescriptor& d);

/// Indices of curves with length < 2 eps.
std::vector<std::size_t> short_curve_indices(const SurfaceDescriptor& d, double epsilon);

/// N_eps: number of curves with length < 2 eps.
int count_short_geodesics(const SurfaceDescriptor& d, double epsilon);

/// I_eps: connected components of the pants graph after deleting short curves.
int thick_component_count(const SurfaceDescriptor& d, double epsilon);

struct CollarEntry {
    std::string curve_id;
    collar::CollarProfile profile;
    double trimmed_width = 0.0;         ///< w - trim
    double boundary_length = 0.0;       ///< l cosh(w - trim)
    double thin_area = 0.0;             ///< 2 l sinh(w - trim)
};

struct DecompositionReport {
    double epsilon = 0.0;
    double trim = 0.0;
    std::vector<std::string> short_curves;
    int n_short = 0;
    int thick_components = 0;
    double total_area = 0.0;
    double thin_area = 0.0;
    std::vector<CollarEntry> per_collar;
};

/// Gauss-Bonnet area 4 pi (g - 1) and the area of the trimmed collars
/// collar(gamma, w(gamma) - trim) over all short gamma.
/// Throws DomainError when some short curve has w(gamma) <= trim or when the
/// thin area would not be strictly smaller than the total.
DecompositionReport area_budget(const SurfaceDescriptor& d, double epsilon, double trim);

// Parameterized families used for bound comparisons.

/// Surface cut by g+1 short separating-system curves into two planar halves,
/// each a chain of g-1 pants. Internal curves get `long_length`.
SurfaceDescriptor two_piece_family(int genus, double short_length, double long_length);

/// Ring of 2g-2 pants with a doubled edge between pants 2k and 2k+1. The first
/// `n_short` doubling edges (non-separating) get `short_length`.
SurfaceDescriptor necklace_family(int genus, int n_short, double short_length, double long_length);

}  // namespace hypermult
