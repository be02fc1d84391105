#include "hypermult/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "hypermult/errors.hpp"

namespace hypermult::io {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

const json& field(const json& obj, const char* name, const std::string& where) {
    if (!obj.is_object()) throw SchemaError("missing field", where + " is not an object");
    const auto it = obj.find(name);
    if (it == obj.end()) throw SchemaError("missing field", "missing field '" + std::string(name) + "' in " + where);
    return *it;
}

[[noreturn]] void mistyped(const char* name, const std::string& where, const char* expected) {
    throw SchemaError("field type", "field '" + std::string(name) + "' in " + where + " must be " + expected);
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

SurfaceDescriptor parse_descriptor(const json& j) {
    const json& genus = field(j, "genus", "descriptor");
    if (!genus.is_number_integer()) mistyped("genus", "descriptor", "an integer");
    const json& curves = field(j, "curves", "descriptor");
    if (!curves.is_array()) mistyped("curves", "descriptor", "an array");

    std::vector<Curve> out;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const std::string where = "curves[" + std::to_string(k) + "]";
        const json& c = curves[k];
        const json& id = field(c, "id", where);
        const json& length = field(c, "length", where);
        const json& ends = field(c, "ends", where);
        if (!id.is_string()) mistyped("id", where, "a string");
        if (!length.is_number()) mistyped("length", where, "a number");
        if (!ends.is_array() || ends.size() != 2 || !ends[0].is_number_integer() || !ends[1].is_number_integer())
            mistyped("ends", where, "a pair of integers");
        out.push_back({id.get<std::string>(), length.get<double>(), {ends[0].get<int>(), ends[1].get<int>()}});
    }
    SurfaceDescriptor d = SurfaceDescriptor::from_curves(genus.get<int>(), std::move(out));
    require_valid(d);
    return d;
}

SurfaceDescriptor parse_descriptor_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("json", std::string("malformed JSON: ") + e.what());
    }
    return parse_descriptor(j);
}

json to_json(const SurfaceDescriptor& d) {
    json curves = json::array();
    for (const Curve& c : d.curves) curves.push_back({{"id", c.id}, {"length", c.length}, {"ends", c.ends}});
    return {{"genus", d.genus}, {"curves", curves}};
}

json to_json(const DecompositionReport& r) {
    json collars = json::array();
    for (const CollarEntry& c : r.per_collar)
        collars.push_back({{"curve_id", c.curve_id},
                           {"length", c.profile.length},
                           {"width", c.profile.width},
                           {"trimmed_width", c.trimmed_width},
                           {"boundary_length", c.boundary_length},
                           {"thin_area", c.thin_area}});
    return {{"epsilon", r.epsilon},
            {"trim", r.trim},
            {"short_curves", r.short_curves},
            {"n_short", r.n_short},
            {"thick_components", r.thick_components},
            {"total_area", r.total_area},
            {"thin_area", r.thin_area},
            {"thick_area", r.total_area - r.thin_area},
            {"per_collar", collars}};
}

json to_json(const bounds::ConstantsProfile& p) {
    json provenance = json::object();
    for (const auto& [name, tag] : p.provenance) provenance[name] = bounds::to_string(tag);
    return {{"K", p.K},   {"C_eps", p.C_eps}, {"c", p.c},   {"C", p.C},     {"C_prime", p.C_prime},
            {"h", p.h()}, {"c1", p.c1()},     {"c2", p.c2}, {"c3", p.c3},   {"C1_C5", p.C_n},
            {"provenance", provenance}};
}

json to_json(const bounds::BoundReport& r) {
    const auto& in = r.inputs;
    json j = {{"genus", in.genus},
              {"eps", in.eps},
              {"lambda", optional_number(in.lambda)},
              {"delta", in.delta},
              {"n_short", in.n_short},
              {"i_thick", in.i_thick},
              {"thm1", optional_number(r.thm1)},
              {"thm2", optional_number(r.thm2)},
              {"crossover_lambda", optional_number(r.crossover)},
              {"stronger", bounds::to_string(r.stronger)}};
    if (!r.thm1_error.empty()) j["thm1_error"] = r.thm1_error;
    if (!r.thm2_error.empty()) j["thm2_error"] = r.thm2_error;
    if (r.radii) {
        j["radii"] = {{"r1", r.radii->r1}, {"r2", r.radii->r2}, {"n", r.radii->n}, {"warnings", r.radii->warnings}};
    } else {
        j["radii"] = {{"error", r.radii_error}};
    }
    if (r.levels) {
        j["mu"] = std::vector<double>(r.levels->mu.begin(), r.levels->mu.end());
        j["R"] = std::vector<double>(r.levels->R.begin(), r.levels->R.end());
    }
    return j;
}

json to_json(const nets::NetResult& r) {
    return {{"r", r.r},
            {"size", r.selected.size()},
            {"selected", r.selected},
            {"is_separated", r.is_separated},
            {"is_net", r.is_net}};
}

nets::PointCloud read_cloud_csv(std::istream& in, double eps) {
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("csv header", "point cloud CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "id,x,y") throw SchemaError("csv header", "point cloud CSV header must be 'id,x,y'");
    std::vector<std::int64_t> ids;
    std::vector<double> xs;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b, c, extra;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ',') ||
            std::getline(ss, extra, ','))
            throw SchemaError("csv row", "row " + std::to_string(row) + " must have 3 fields");
        try {
            std::size_t pa = 0, pb = 0, pc = 0;
            ids.push_back(std::stoll(a, &pa));
            xs.push_back(std::stod(b, &pb));
            xs.push_back(std::stod(c, &pc));
            if (pa != a.size() || pb != b.size() || pc != c.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw SchemaError("csv row", "row " + std::to_string(row) + " is not numeric");
        }
    }
    if (ids.empty()) throw SchemaError("csv row", "point cloud CSV has no points");
    Eigen::MatrixX2d pts(static_cast<Eigen::Index>(ids.size()), 2);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        pts(i, 0) = xs[2 * i];
        pts(i, 1) = xs[2 * i + 1];
    }
    try {
        return nets::PointCloud(eps, std::move(pts), std::move(ids));
    } catch (const DomainError& e) {
        throw SchemaError("point cloud", e.what());
    }
}

void write_cloud_csv(std::ostream& out, const nets::PointCloud& cloud) {
    CsvWriter w(out, {"id", "x", "y"});
    for (Eigen::Index i = 0; i < cloud.size(); ++i) {
        w << static_cast<long>(cloud.ids()[i]) << cloud.points()(i, 0) << cloud.points()(i, 1);
        w.end_row();
    }
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
    for (const auto& h : header) *this << h;
    end_row();
}

void CsvWriter::sep() {
    if (row_started_) out_ << ',';
    row_started_ = true;
}

CsvWriter& CsvWriter::operator<<(double x) {
    sep();
    out_ << format_double(x);
    return *this;
}

CsvWriter& CsvWriter::operator<<(long x) {
    sep();
    out_ << x;
    return *this;
}

CsvWriter& CsvWriter::operator<<(bool x) {
    sep();
    out_ << (x ? "true" : "false");
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& x) {
    sep();
    out_ << x;
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

void write_mass_sweep_csv(std::ostream& out, const std::vector<modes::MassSweepRow>& rows) {
    CsvWriter w(out, {"length", "lambda", "j", "ratio_phi", "ratio_psi", "bound", "pass", "cosh_ratio",
                      "wronskian_drift", "composite_gap"});
    for (const auto& r : rows) {
        w << r.length << r.lambda << r.j << r.ratio_phi << r.ratio_psi << r.bound << r.pass << r.cosh_comparison
          << r.wronskian_drift << r.composite_gap;
        w.end_row();
    }
}

void write_bound_sweep_csv(std::ostream& out, const std::vector<bounds::SweepRow>& rows) {
    CsvWriter w(out, {"family", "g", "eps", "lambda", "N_eps", "I_eps", "thm1", "thm2", "stronger"});
    for (const auto& r : rows) {
        w << r.family << r.genus << r.eps << r.lambda << r.n_short << r.i_thick;
        w << (r.thm1 ? format_double(*r.thm1) : std::string("n/a"));
        w << (r.thm2 ? format_double(*r.thm2) : std::string("n/a"));
        w << bounds::to_string(r.stronger);
        w.end_row();
    }
}

}  // namespace hypermult::io
