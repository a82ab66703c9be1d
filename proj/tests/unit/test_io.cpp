#include "oracles.hpp"

#include "hqc/io.hpp"

#include <doctest.h>

using namespace hqc;
using io::Json;

TEST_CASE("pi literals") {
    CHECK(io::parse_real("pi") == kPi);
    CHECK(io::parse_real("pi/2") == kPi / 2);
    CHECK(io::parse_real("-pi/4") == -kPi / 4);
    CHECK(io::parse_real("3pi/4") == 3 * kPi / 4);
    CHECK(io::parse_real("3*pi/4") == 3 * kPi / 4);
    CHECK(io::parse_real(" 2 * pi ") == 2 * kPi);
    CHECK(io::parse_real("0.25") == 0.25);
    CHECK(io::parse_real("-1e-3") == -1e-3);
    CHECK(io::parse_real("+0.5pi") == 0.5 * kPi);
    for (const char* bad : {"", "pie", "pi/", "pi/0", "2x", "pi*2", "--1", "pi/2/3"}) {
        CHECK_THROWS_AS(io::parse_real(bad), InvalidArgument);
    }
}

TEST_CASE("lists") {
    CHECK(io::parse_real_list("pi/4, 0,1") == std::vector<double>{kPi / 4, 0.0, 1.0});
    CHECK(io::parse_real_list("").empty());
    CHECK(io::parse_int_list("250,500") == std::vector<int>{250, 500});
    CHECK_THROWS_AS(io::parse_int_list("1.5"), InvalidArgument);
    CHECK_THROWS_AS(io::parse_real_list("1,,2"), InvalidArgument);
}

TEST_CASE("real numbers format for round trip") {
    for (double x : {0.1, kPi, -1e-300, 12345.678}) CHECK(io::parse_real(io::format_real(x)) == x);
}

TEST_CASE("matrices round-trip as [re, im] pairs") {
    std::mt19937_64 rng(81);
    const Matrix m = oracle::random_unitary(3, rng);
    const Json j = io::matrix_to_json(m);
    CHECK(j.size() == 3);
    CHECK(j[0][0].size() == 2);
    CHECK(oracle::max_abs(io::matrix_from_json(Json::parse(j.dump())) - m) == 0.0);
    const Matrix r = io::matrix_from_json(Json::parse(R"([[1, "pi/2"], [[0, 1], 0]])"));
    CHECK(r(0, 1) == Complex(kPi / 2, 0.0));
    CHECK(r(1, 0) == Complex(0.0, 1.0));
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[1, 2], [3]]")), InvalidArgument);
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[]")), InvalidArgument);
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[[1, 2, 3]]]")), InvalidArgument);
}

TEST_CASE("points") {
    const ControlPoint p = io::point_from_json(Json::parse(R"({"theta": ["pi/4", 0.1], "phi": [0, "pi"]})"));
    CHECK(p.theta(1) == kPi / 4);
    CHECK(p.phi(2) == kPi);
    CHECK(io::point_from_json(io::point_to_json(p)) == p);
    CHECK(io::point_from_json(Json::parse(R"({"theta": [0.3]})")).phi(1) == 0.0);
    CHECK_THROWS_AS(io::point_from_json(Json::parse(R"({"phi": [0.3]})")), InvalidArgument);
    CHECK_THROWS_AS(io::point_from_json(Json::parse(R"({"theta": [0.3], "phi": [1, 2]})")), InvalidArgument);
    CHECK_THROWS_AS(io::point_from_json(Json::parse(R"({"theta": [3.0]})")), InvalidArgument);
}

TEST_CASE("loop documents") {
    const Json rect = Json::parse(R"({"n": 1, "plane": {"coords": ["theta:1", "phi:1"]},
        "rectangle": {"x": [0, "pi/2"], "y": [0, "pi"], "ccw": false}, "family": "C1", "segments_per_edge": 32})");
    const io::LoopDocument d = io::loop_from_json(rect);
    CHECK(d.family == LoopFamily::C1);
    CHECK(d.segments_per_edge == 32);
    CHECK(enclosed_area(d.loop, LoopFamily::C1) == doctest::Approx(kPi));

    const Json poly = Json::parse(R"({"n": 2, "plane": {"coords": ["theta:1", "theta:2"], "frozen": {"theta": [0, 0], "phi": [0, 0]}},
        "vertices": [[0, 0], [1, 0], [1, 1]]})");
    CHECK(io::loop_from_json(poly).loop.edge_count() == 3);

    const Json explicit_points = io::loop_to_json(d.loop, LoopFamily::C1);
    const io::LoopDocument back = io::loop_from_json(explicit_points);
    CHECK(back.loop.points().size() == d.loop.points().size());
    CHECK(enclosed_area(back.loop, LoopFamily::C1) == doctest::Approx(kPi));

    CHECK_THROWS_AS(io::loop_from_json(Json::parse(R"({"n": 1, "vertices": [[0, 0], [1, 0], [1, 1]]})")), InvalidArgument);
    CHECK_THROWS_AS(io::loop_from_json(Json::parse(R"({"n": 1, "plane": {"coords": ["theta:1"]}, "vertices": []})")),
                    InvalidArgument);
    CHECK_THROWS(io::loop_from_json(Json::parse(R"({"plane": null})")));
}

TEST_CASE("programs round-trip") {
    const GateProgram p = two_qubit_gate(NamedGate::XOR);
    const Json j = io::program_to_json(p);
    CHECK(j["steps"][0].contains("frozen"));
    CHECK(io::program_from_json(Json::parse(j.dump())) == p);
    CHECK_THROWS_AS(io::program_from_json(Json::parse(R"({"n": 2, "steps": [{"family": "C2", "beta": 1, "area": 1}]})")),
                    InvalidArgument);
    const GateProgram q = io::program_from_json(
        Json::parse(R"({"n": 2, "steps": [{"family": "C3", "beta": 1, "beta_bar": 2, "area": "pi/4"}]})"));
    CHECK(q.steps[0].area == kPi / 4);
}

TEST_CASE("circuits") {
    const auto c = io::circuit_from_json(
        Json::parse(R"([{"pair": [1, 2], "gate": "XOR"}, {"pair": [2, 3], "gate": {"matrix": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,-1]]}}])"));
    REQUIRE(c.size() == 2);
    CHECK(c[0].named == NamedGate::XOR);
    CHECK_FALSE(c[1].named.has_value());
    CHECK(c[1].gate(3, 3) == Complex(-1.0, 0.0));
    CHECK_THROWS_AS(io::circuit_from_json(Json::parse(R"({"pair": [1, 2]})")), InvalidArgument);
    CHECK_THROWS_AS(io::circuit_from_json(Json::parse(R"([{"pair": [1], "gate": "XOR"}])")), InvalidArgument);
}

TEST_CASE("json arguments: inline or file") {
    CHECK(io::load_json_argument(" {\"a\": 1}")["a"] == 1);
    CHECK_THROWS_AS(io::load_json_argument("/nonexistent/file.json"), InvalidArgument);
    CHECK_THROWS(io::load_json_argument("{broken"));
}
