#include "hypermult/surface_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hypermult/errors.hpp"

namespace hypermult {

namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        --components_;
    }

    std::size_t components() const { return components_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned char> rank_;
    std::size_t components_;
};

ValidationResult fail(std::string invariant, std::string message) {
    return {false, std::move(invariant), std::move(message)};
}

void require_positive_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw DomainError("epsilon must be positive and finite");
}

}  // namespace

SurfaceDescriptor SurfaceDescriptor::from_curves(int genus, std::vector<Curve> curves) {
    SurfaceDescriptor d;
    d.genus = genus;
    int max_id = -1;
    for (const auto& c : curves) max_id = std::max({max_id, c.ends[0], c.ends[1]});
    d.curves = std::move(curves);
    d.pants_count = max_id + 1;
    return d;
}

ValidationResult validate_descriptor(const SurfaceDescriptor& d) {
    if (d.genus < 2) return fail("genus", "genus must be at least 2");

    const auto expected_curves = static_cast<std::size_t>(3 * d.genus - 3);
    if (d.curves.size() != expected_curves)
        return fail("curve count", "expected " + std::to_string(expected_curves) + " curves, found " +
                                       std::to_string(d.curves.size()));

    const int expected_pants = 2 * d.genus - 2;
    if (d.pants_count != expected_pants)
        return fail("pants count", "expected " + std::to_string(expected_pants) + " pants, found " +
                                       std::to_string(d.pants_count));

    for (const auto& c : d.curves) {
        for (int end : c.ends)
            if (end < 0 || end >= d.pants_count)
                return fail("pants id", "curve '" + c.id + "' references pants " + std::to_string(end));
    }

    for (const auto& c : d.curves)
        if (!(c.length > 0.0) || !std::isfinite(c.length))
            return fail("length", "curve '" + c.id + "' has non-positive or non-finite length");

    std::vector<int> degree(static_cast<std::size_t>(d.pants_count), 0);
    for (const auto& c : d.curves) {
        ++degree[static_cast<std::size_t>(c.ends[0])];
        ++degree[static_cast<std::size_t>(c.ends[1])];
    }
    for (std::size_t v = 0; v < degree.size(); ++v)
        if (degree[v] != 3)
            return fail("degree", "pants " + std::to_string(v) + " has degree " + std::to_string(degree[v]));

    DisjointSet ds(degree.size());
    for (const auto& c : d.curves)
        ds.unite(static_cast<std::size_t>(c.ends[0]), static_cast<std::size_t>(c.ends[1]));
    if (ds.components() != 1)
        return fail("connectivity", "pants graph has " + std::to_string(ds.components()) + " components");

    return {};
}

void require_valid(const SurfaceDescriptor& d) {
    auto result = validate_descriptor(d);
    if (!result) throw SchemaError(result.invariant, result.invariant + ": " + result.message);
}

std::vector<std::size_t> short_curve_indices(const SurfaceDescriptor& d, double epsilon) {
    require_positive_epsilon(epsilon);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.curves.size(); ++i)
        if (d.curves[i].length < 2.0 * epsilon) out.push_back(i);
    return out;
}

int count_short_geodesics(const SurfaceDescriptor& d, double epsilon) {
    return static_cast<int>(short_curve_indices(d, epsilon).size());
}

int thick_component_count(const SurfaceDescriptor& d, double epsilon) {
    require_valid(d);
    require_positive_epsilon(epsilon);
    DisjointSet ds(static_cast<std::size_t>(d.pants_count));
    for (const auto& c : d.curves)
        if (!(c.length < 2.0 * epsilon))
            ds.unite(static_cast<std::size_t>(c.ends[0]), static_cast<std::size_t>(c.ends[1]));
    return static_cast<int>(ds.components());
}

DecompositionReport area_budget(const SurfaceDescriptor& d, double epsilon, double trim) {
    require_valid(d);
    if (!(trim >= 0.0) || !std::isfinite(trim)) throw DomainError("trim must be a finite non-negative number");

    DecompositionReport report;
    report.epsilon = epsilon;
    report.trim = trim;
    report.total_area = 4.0 * std::numbers::pi * (d.genus - 1);

    for (std::size_t i : short_curve_indices(d, epsilon)) {
        const Curve& c = d.curves[i];
        CollarEntry entry;
        entry.curve_id = c.id;
        entry.profile = collar::CollarProfile::of(c.length);
        if (!(trim < entry.profile.width))
            throw DomainError("curve '" + c.id + "': trim " + std::to_string(trim) +
                              " is not below the collar width " + std::to_string(entry.profile.width));
        entry.trimmed_width = entry.profile.width - trim;
        entry.boundary_length = entry.profile.boundary_length_at(entry.trimmed_width);
        entry.thin_area = entry.profile.area_at(entry.trimmed_width);
        report.thin_area += entry.thin_area;
        report.short_curves.push_back(c.id);
        report.per_collar.push_back(std::move(entry));
    }
    report.n_short = static_cast<int>(report.short_curves.size());
    report.thick_components = thick_component_count(d, epsilon);

    if (!(report.thin_area < report.total_area))
        throw DomainError("thin area " + std::to_string(report.thin_area) + " is not below the total area " +
                          std::to_string(report.total_area));
    return report;
}

SurfaceDescriptor two_piece_family(int genus, double short_length, double long_length) {
    if (genus < 2) throw DomainError("two_piece_family: genus must be at least 2");
    // Each half is a path of g-1 pants; its free slots (g+1 of them) are glued
    // one-to-one to the mirror half.
    const int half = genus - 1;
    std::vector<Curve> curves;
    std::vector<int> free_a;
    for (int side = 0; side < 2; ++side) {
        const int base = side * half;
        for (int k = 0; k + 1 < half; ++k)
            curves.push_back({(side ? "b" : "a") + std::to_string(k), long_length, {base + k, base + k + 1}});
    }
    for (int k = 0; k < half; ++k) {
        const int internal = (k > 0) + (k + 1 < half);
        for (int s = internal; s < 3; ++s) free_a.push_back(k);
    }
    for (std::size_t i = 0; i < free_a.size(); ++i)
        curves.push_back({"s" + std::to_string(i), short_length, {free_a[i], free_a[i] + half}});
    return SurfaceDescriptor::from_curves(genus, std::move(curves));
}

SurfaceDescriptor necklace_family(int genus, int n_short, double short_length, double long_length) {
    if (genus < 2) throw DomainError("necklace_family: genus must be at least 2");
    const int pants = 2 * genus - 2;
    if (n_short < 0 || n_short > genus - 1)
        throw DomainError("necklace_family: n_short must lie in [0, g-1]");
    std::vector<Curve> curves;
    for (int k = 0; k < pants; ++k)
        curves.push_back({"r" + std::to_string(k), long_length, {k, (k + 1) % pants}});
    for (int k = 0; k < genus - 1; ++k)
        curves.push_back({"d" + std::to_string(k), k < n_short ? short_length : long_length, {2 * k, 2 * k + 1}});
    return SurfaceDescriptor::from_curves(genus, std::move(curves));
}

}  // namespace hypermult
