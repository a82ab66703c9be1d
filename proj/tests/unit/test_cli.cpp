#include "hqc/cli.hpp"
#include "hqc/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace hqc;
using io::Json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    const Run r = run(std::move(args));
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream cs(line);
        std::string cell;
        while (std::getline(cs, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("connection at the origin is all zeros") {
    const Json j = run_json({"connection", "--n", "2"});
    CHECK(j["n"] == 2);
    for (const auto& key : {"a_theta", "a_phi"})
        for (const auto& m : j[key])
            for (const auto& row : m)
                for (const auto& e : row) {
                    CHECK(e[0].get<double>() == 0.0);
                    CHECK(e[1].get<double>() == 0.0);
                }
}

TEST_CASE("connection n=1 at theta=pi/4") {
    const Json j = run_json({"connection", "--theta", "pi/4", "--phi", "0.3"});
    CHECK(j["a_phi"][0][0][0][0].get<double>() == doctest::Approx(0.0));
    CHECK(j["a_phi"][0][0][0][1].get<double>() == doctest::Approx(-0.5));
    const Json num = run_json({"connection", "--point", R"({"theta": ["pi/4"], "phi": [0.3]})", "--numeric"});
    CHECK(num["method"] == "numeric");
    CHECK(num["a_phi"][0][0][0][1].get<double>() == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"connection", "--point", "{not json"}).code == cli::kExitUsage);
    CHECK(run({"connection", "--theta", "abc"}).code == cli::kExitUsage);
    CHECK(run({"connection", "--theta", "2.0"}).code == cli::kExitUsage);
    CHECK(run({"gate", "toffoli"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"holonomy", "--family", "C3", "--beta", "1", "--beta-bar", "2", "--area", "3"}).code == cli::kExitUsage);
    CHECK(run({"connection", "--format", "xml", "--n", "1"}).code == cli::kExitUsage);
    CHECK(run({"connection", "--format", "csv", "--n", "1"}).code == cli::kExitUsage);
}

TEST_CASE("help exits with 0") {
    const Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify") != std::string::npos);
    CHECK(run({"kick", "--help"}).code == 0);
}

TEST_CASE("numerical failures exit with 3") {
    // A target far from unitary is rejected by certification.
    CHECK(run({"compile", "--target", "[[1, 1], [0, 1]]"}).code == cli::kExitNumerical);
}

TEST_CASE("holonomy of a primitive loop") {
    const Json j = run_json({"holonomy", "--family", "C1", "--beta", "1", "--area", "pi"});
    CHECK(j["dim"] == 1);
    CHECK(j["entries"][0][0][0].get<double>() == doctest::Approx(-1.0));
    CHECK(j["enclosed_area"].get<double>() == doctest::Approx(3.141592653589793));
    CHECK(j["pass"] == true);
    const Json l = run_json({"holonomy", "--loop",
                             R"({"n": 2, "plane": {"coords": ["theta:1", "theta:2"]}, "family": "C3",
                                "rectangle": {"x": [0, "pi/2"], "y": [0, "pi/2"]}, "segments_per_edge": 256})"});
    CHECK(l["entries"][1][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(l["segments_per_edge"] == 256);
}

TEST_CASE("gate fidelity for named programs") {
    for (const char* name : {"crot", "xor", "swap", "uph1", "phase1", "phase2"}) {
        const Json j = run_json({"gate", name});
        CHECK(j["fidelity"].get<double>() >= 1.0 - 1e-6);
        CHECK(j["distance"].get<double>() < 1e-6);
        CHECK(j["pass"] == true);
    }
    const Json t = run_json({"gate", "--target", "[[0, 1], [1, 0]]"});
    CHECK(t["fidelity"].get<double>() >= 1.0 - 1e-6);
    CHECK(run({"gate", "xor", "--target", "[[1]]"}).code == cli::kExitUsage);
}

TEST_CASE("compile reports program and distance") {
    const Json j = run_json({"compile", "--target", R"([[[0.7071067811865476, 0], [0, -0.7071067811865476]],
                                                        [[0, -0.7071067811865476], [0.7071067811865476, 0]]])"});
    CHECK(j["distance"].get<double>() < 1e-8);
    CHECK(j["pass"] == true);
    const Json b = run_json({"compile", "--target", "[[0, -1], [1, 0]]", "--beta", "2", "--beta-bar", "3", "--n", "4"});
    CHECK(b["program"]["n"] == 4);
    CHECK(b["step_count"] == 1);
}

TEST_CASE("verify a C1 loop at the default budget") {
    const Json j = run_json({"verify", "--family", "C1", "--beta", "1", "--area", "pi/4"});
    for (const char* key : {"transport", "leakage", "distance_to_holonomy", "T", "steps", "max_leakage", "pass"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["distance_to_holonomy"].get<double>() < 5e-2);
    CHECK(j["T"].get<double>() == 2000.0);
    CHECK(run({"verify", "--family", "C1", "--beta", "1", "--area", "pi/4", "--T", "0"}).code == cli::kExitUsage);
    const Json g = run_json({"verify", "--gate", "crot"});
    CHECK(g["distance_to_holonomy"].get<double>() < 5e-2);
    CHECK(g["leakage"].size() == 4);
}

TEST_CASE("kick convergence table") {
    const Run r = run({"kick", "--family", "C1", "--beta", "1", "--area", "pi/4", "--reference-steps", "100000"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"N", "delta_t", "distance"});
    const double d250 = std::stod(rows[1][2]);
    const double d500 = std::stod(rows[2][2]);
    const double d1000 = std::stod(rows[3][2]);
    CHECK(d250 / d500 > 1.6);
    CHECK(d250 / d500 < 2.4);
    CHECK(d500 / d1000 > 1.6);
    CHECK(d500 / d1000 < 2.4);

    const auto one = csv_rows(run({"kick", "--family", "C1", "--beta", "1", "--area", "0.3", "--N", "1,2"}).out);
    REQUIRE(one.size() == 3);
    CHECK(one[1][0] == "1");
    CHECK(run({"kick", "--family", "C1", "--beta", "1", "--area", "0.3", "--N", ""}).code == cli::kExitUsage);
    const Json j = run_json({"kick", "--family", "C1", "--beta", "1", "--area", "0.3", "--N", "10", "--format", "json"});
    CHECK(j["rows"][0]["N"] == 10);
}

TEST_CASE("circuit command") {
    const Json j = run_json({"circuit", "--qubits", "2", "--state", "10", "--circuit", R"([{"pair": [1, 2], "gate": "XOR"}])"});
    REQUIRE(j["support"].size() == 1);
    CHECK(j["support"][0]["basis"] == "11+");
    CHECK(j["cost"]["local_total"] == 3);
    CHECK(run({"circuit", "--qubits", "2", "--circuit", R"([{"pair": [1, 3], "gate": "XOR"}])"}).code == cli::kExitUsage);
}

TEST_CASE("sweeps") {
    const auto rows = csv_rows(run({"sweep", "segments", "--family", "C1", "--beta", "1", "--area", "0.5"}).out);
    CHECK(rows.size() == 6);
    const auto adiabatic = csv_rows(run({"sweep", "adiabatic", "--T", "100,200"}).out);
    CHECK(adiabatic.size() == 3);
    const Run compile = run({"sweep", "compile", "--count", "5", "--n", "3", "--seed", "9"});
    CHECK(compile.code == 0);
    CHECK(csv_rows(compile.out).size() == 6);
    CHECK(run({"sweep", "nothing"}).code == cli::kExitUsage);
}

TEST_CASE("fixed seed gives byte-identical output") {
    const std::vector<std::string> args = {"sweep", "compile", "--count", "4", "--n", "3", "--seed", "42", "--format", "json"};
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Run c = run({"sweep", "compile", "--count", "4", "--n", "3", "--seed", "43", "--format", "json"});
    CHECK(c.out != a.out);
}

TEST_CASE("--out writes the result to a file") {
    const std::string path = "cli_out_test.json";
    const Run r = run({"gate", "crot", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    const Json j = Json::parse(in);
    CHECK(j["gate"] == "CROT");
    std::remove(path.c_str());
}
