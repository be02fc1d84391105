#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypermult/bounds.hpp"
#include "hypermult/mode_analysis.hpp"
#include "hypermult/nets.hpp"
#include "hypermult/surface_model.hpp"

// File formats: descriptor JSON in, JSON reports and CSV tables out.
// Floats in CSV are written with 17 significant digits.

namespace hypermult::io {

using nlohmann::json;

std::string format_double(double x);

/// {"genus": int, "curves": [{"id": str, "length": float, "ends": [int, int]}]}
/// Throws SchemaError naming the missing or mistyped field, then the first
/// violated descriptor invariant.
SurfaceDescriptor parse_descriptor(const json& j);
SurfaceDescriptor parse_descriptor_text(const std::string& text);
json to_json(const SurfaceDescriptor& d);

json to_json(const DecompositionReport& r);
json to_json(const bounds::ConstantsProfile& p);
json to_json(const bounds::BoundReport& r);
json to_json(const nets::NetResult& r);

/// Header "id,x,y". Throws SchemaError on malformed rows.
nets::PointCloud read_cloud_csv(std::istream& in, double eps);
void write_cloud_csv(std::ostream& out, const nets::PointCloud& cloud);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::vector<std::string>& header);
    CsvWriter& operator<<(double x);
    CsvWriter& operator<<(long x);
    CsvWriter& operator<<(int x) { return *this << static_cast<long>(x); }
    CsvWriter& operator<<(bool x);
    CsvWriter& operator<<(const std::string& x);
    CsvWriter& operator<<(const char* x) { return *this << std::string(x); }
    /// Ends the current row.
    void end_row();

private:
    void sep();
    std::ostream& out_;
    bool row_started_ = false;
};

void write_mass_sweep_csv(std::ostream& out, const std::vector<modes::MassSweepRow>& rows);
void write_bound_sweep_csv(std::ostream& out, const std::vector<bounds::SweepRow>& rows);

}  // namespace hypermult::io
