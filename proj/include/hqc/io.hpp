#pragma once

// JSON encodings of points, loops, programs, matrices and circuits.
// Matrices are arrays of rows of [re, im] pairs. Numeric fields also accept
// pi literals such as "pi/2", "-3pi/4", "2*pi" or "0.25".

#include "hqc/connection.hpp"
#include "hqc/dynamics.hpp"
#include "hqc/multipartite.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace hqc::io {

using Json = nlohmann::ordered_json;

// Parses "pi", "pi/2", "-pi/4", "3pi/4", "3*pi/4", "2.5", "1e-3" ...
double parse_real(std::string_view text);

// A JSON number or a string accepted by parse_real.
double real_from_json(const Json& j);

// Comma-separated list of parse_real values.
std::vector<double> parse_real_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

// Inline JSON when the text starts with '{' or '[', otherwise a file path.
Json load_json_argument(const std::string& text);

// Shortest round-trip decimal form.
std::string format_real(double x);

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);
// Accepts [re, im] pairs or plain reals per entry.
Matrix matrix_from_json(const Json& j);

Json point_to_json(const ControlPoint& p);
// {"theta": [...], "phi": [...]}; a missing "phi" means zeros.
ControlPoint point_from_json(const Json& j);

Json connection_to_json(const ConnectionValue& c);

// Loop documents:
//   {"n", "plane": {"coords": ["theta:1", "phi:1"], "frozen": point},
//    "points": [[[theta...], [phi...]], ...]}                        explicit vertices, or
//    "vertices": [[x, y], ...]                                       plane polygon, or
//    "rectangle": {"x": [x0, x1], "y": [y0, y1], "ccw": bool}        plane rectangle
// plus optional "family" and "segments_per_edge".
struct LoopDocument {
    LoopPath loop;
    std::optional<LoopFamily> family;
    std::optional<int> segments_per_edge;
};

LoopDocument loop_from_json(const Json& j);
Json loop_to_json(const LoopPath& loop, std::optional<LoopFamily> family = std::nullopt);

Json step_to_json(const GateStep& step, int n);
GateStep step_from_json(const Json& j);
Json program_to_json(const GateProgram& program);
GateProgram program_from_json(const Json& j);

// [{"pair": [i, j], "gate": "XOR" | {"matrix": ...}}, ...]
std::vector<CircuitGate> circuit_from_json(const Json& j);

Json vector_to_json(const std::vector<double>& v);
Json state_to_json(const Vector& v);

} // namespace hqc::io
