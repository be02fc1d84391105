#include <doctest.h>

#include <sstream>

#include "hypermult/errors.hpp"
#include "hypermult/io.hpp"

using namespace hypermult;

namespace {

std::string schema_invariant(const std::string& text) {
    try {
        io::parse_descriptor_text(text);
    } catch (const SchemaError& e) {
        return e.invariant() + ": " + e.what();
    }
    return "";
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("17 significant digits") {
    CHECK(io::format_double(0.1) == "0.10000000000000001");
    CHECK(io::format_double(1048.0) == "1048");
    CHECK(io::format_double(5755514.532130130) == "5755514.5321301296");
}

TEST_CASE("descriptor round trip") {
    const std::string text =
        R"({"genus": 2, "curves": [{"id": "a", "length": 0.1, "ends": [0, 1]},
                                   {"id": "b", "length": 0.3, "ends": [0, 1]},
                                   {"id": "c", "length": 1.0, "ends": [0, 1]}]})";
    const auto d = io::parse_descriptor_text(text);
    CHECK(d.genus == 2);
    CHECK(d.curves.size() == 3);
    CHECK(d.curves[1].id == "b");
    CHECK(io::parse_descriptor(io::to_json(d)).curves[2].length == 1.0);
}

TEST_CASE("schema errors name the problem") {
    CHECK(schema_invariant("{") .rfind("json:", 0) == 0);
    const auto missing = schema_invariant(R"({"curves": []})");
    CHECK(missing.rfind("missing field:", 0) == 0);
    CHECK(missing.find("'genus'") != std::string::npos);
    const auto no_length = schema_invariant(R"({"genus": 2, "curves": [{"id": "a", "ends": [0, 1]}]})");
    CHECK(no_length.find("'length'") != std::string::npos);
    CHECK(no_length.find("curves[0]") != std::string::npos);
    CHECK(schema_invariant(R"({"genus": "two", "curves": []})").rfind("field type:", 0) == 0);
    CHECK(schema_invariant(R"({"genus": 2, "curves": [{"id": "a", "length": 1, "ends": [0]}]})").rfind("field type:", 0) == 0);
    CHECK(schema_invariant(R"({"genus": 2, "curves": [{"id": "a", "length": 1, "ends": [0, 1]}]})").rfind("curve count:", 0) == 0);
}

TEST_CASE("point cloud CSV round trip") {
    const auto cloud = nets::sample_hyperbolic_ball(0.5, 4.0, 25, 8);
    std::stringstream ss;
    io::write_cloud_csv(ss, cloud);
    CHECK(ss.str().rfind("id,x,y\n", 0) == 0);
    const auto back = io::read_cloud_csv(ss, 0.5);
    REQUIRE(back.size() == 25);
    CHECK(back.points() == cloud.points());
    CHECK(back.ids() == cloud.ids());
}

TEST_CASE("point cloud CSV errors") {
    std::istringstream bad_header("a,b,c\n1,0,0\n");
    CHECK_THROWS_AS(io::read_cloud_csv(bad_header, 1.0), SchemaError);
    std::istringstream bad_row("id,x,y\n1,0\n");
    CHECK_THROWS_AS(io::read_cloud_csv(bad_row, 1.0), SchemaError);
    std::istringstream outside("id,x,y\n1,1.5,0\n");
    CHECK_THROWS_AS(io::read_cloud_csv(outside, 1.0), SchemaError);
    std::istringstream dup("id,x,y\n1,0,0\n1,0.1,0\n");
    CHECK_THROWS_AS(io::read_cloud_csv(dup, 1.0), SchemaError);
}

TEST_CASE("csv writer") {
    std::ostringstream ss;
    io::CsvWriter w(ss, {"a", "b", "c"});
    w << 1.5 << 2 << true;
    w.end_row();
    CHECK(ss.str() == "a,b,c\n1.5,2,true\n");
}

}
