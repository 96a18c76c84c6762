#include "doctest.h"

#include <sstream>

#include "nlft/errors.hpp"
#include "nlft/io.hpp"

using namespace nlft;
using nlohmann::json;

namespace {

std::string parse_error_path(const json& j) {
    try {
        step_function_from_json(j);
    } catch (const ParseError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("step function JSON") {
    const auto j = json::parse(R"({"d":2,"cell_exponent":0,"support_exponent":1,"values":[[1,0],[0,0]]})");
    const auto f = step_function_from_json(j);
    CHECK(f.radix() == 2);
    CHECK(f.values().size() == 2);
    CHECK(f.values()[0] == cplx(1.0, 0.0));
    CHECK(f.values()[1] == cplx(0.0, 0.0));
    CHECK(to_json(f) == j);
}

TEST_CASE("step function JSON errors") {
    CHECK(parse_error_path(json::parse(R"({"d":2.5,"cell_exponent":0,"support_exponent":0,"values":[[1,0]]})")) == "/d");
    CHECK(parse_error_path(json::parse(R"({"d":"2","cell_exponent":0,"support_exponent":0,"values":[[1,0]]})")) == "/d");
    CHECK(parse_error_path(json::parse(R"({"cell_exponent":0,"support_exponent":0,"values":[[1,0]]})")) == "/d");
    CHECK(parse_error_path(json::parse(R"({"d":2,"cell_exponent":0,"support_exponent":0,"values":[[1,"x"]]})")) ==
          "/values/0/1");
    CHECK(parse_error_path(json::parse(R"({"d":2,"cell_exponent":0,"support_exponent":0,"values":[1]})")) ==
          "/values/0");
    CHECK(parse_error_path(json::parse("[1,2]")) == "");

    try {
        step_function_from_json(json::parse(R"({"d":3,"cell_exponent":1,"support_exponent":1,"values":[[1,0]]})"));
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("= 9 values") != std::string::npos);
        CHECK(msg.find("got 1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_function_file("/nonexistent/f.json"), ParseError);
}

TEST_CASE("top layer CSV") {
    const auto top = transform_top(StepFunction::zero(2, 0, 1), 1);
    std::ostringstream os;
    write_top_layer_csv(os, top, 2, 1);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# nlft-top-layer v1", 0) == 0);
    std::getline(in, line);
    CHECK(line == "xi_num,xi_scale,re_a,im_a,re_b,im_b,abs_a,abs_b,size");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find(",1,0,0,0,1,0,0") != std::string::npos);
    }
    CHECK(rows == 4);
}

TEST_CASE("report serialisation") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(to_json(Su11{{1, 2}, {3, 4}}) == json::array({1.0, 2.0, 3.0, 4.0}));
    ScaleReport r;
    r.p = 1.0;
    r.q = kInfinity;
    CHECK(to_json(r)["q"] == "inf");
    CHECK(to_json(r)["schema_version"] == kSchemaVersion);
    CHECK(all_finite(json::parse(R"({"a":[1,2.5,{"b":3}]})")));
    json bad = {{"x", json::array({1.0, std::nan("")})}};
    CHECK_FALSE(all_finite(bad));
}
