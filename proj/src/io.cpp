#include "hqc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hqc::io {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_real(std::string_view text) {
    throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
}

double parse_plain(std::string_view text, std::string_view whole) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        bad_real(whole);
    }
    return value;
}

} // namespace

double parse_real(std::string_view text) {
    const std::string_view whole = text;
    text = trim(text);
    if (text.empty()) {
        bad_real(whole);
    }
    double sign = 1.0;
    if (text.front() == '+' || text.front() == '-') {
        sign = text.front() == '-' ? -1.0 : 1.0;
        text.remove_prefix(1);
        text = trim(text);
        if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
            bad_real(whole);
        }
    }
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) {
        const double v = parse_plain(text, whole);
        return sign * v;
    }
    std::string_view coefficient = trim(text.substr(0, pi_pos));
    std::string_view rest = trim(text.substr(pi_pos + 2));
    double value = kPi;
    if (!coefficient.empty()) {
        if (coefficient.back() == '*') {
            coefficient = trim(coefficient.substr(0, coefficient.size() - 1));
        }
        value *= parse_plain(coefficient, whole);
    }
    if (!rest.empty()) {
        if (rest.front() != '/') {
            bad_real(whole);
        }
        const double denominator = parse_plain(trim(rest.substr(1)), whole);
        if (denominator == 0.0) {
            bad_real(whole);
        }
        value /= denominator;
    }
    return sign * value;
}

double real_from_json(const Json& j) {
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        return parse_real(j.get<std::string>());
    }
    throw InvalidArgument("expected a number or a pi literal, got " + j.dump());
}

std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (!trim(piece).empty()) {
            values.push_back(parse_real(piece));
        } else if (comma != std::string_view::npos) {
            throw InvalidArgument("empty entry in list '" + std::string(text) + "'");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> values;
    for (double v : parse_real_list(text)) {
        if (v != std::floor(v) || std::abs(v) > 1e9) {
            throw InvalidArgument("expected integers in '" + std::string(text) + "'");
        }
        values.push_back(static_cast<int>(v));
    }
    return values;
}

Json load_json_argument(const std::string& text) {
    const std::string_view t = trim(text);
    if (!t.empty() && (t.front() == '{' || t.front() == '[')) {
        return Json::parse(t);
    }
    std::ifstream in(text);
    if (!in) {
        throw InvalidArgument("cannot open '" + text + "'");
    }
    return Json::parse(in);
}

std::string format_real(double x) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    if (ec != std::errc()) {
        throw NumericalError("cannot format number");
    }
    return std::string(buffer, ptr);
}

Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) {
        throw InvalidArgument("matrix must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j.at(r);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols || cols == 0) {
            throw InvalidArgument("matrix rows must be arrays of equal length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& e = row.at(c);
            if (e.is_array()) {
                if (e.size() != 2) {
                    throw InvalidArgument("complex entries must be [re, im]");
                }
                m(r, c) = Complex(real_from_json(e.at(0)), real_from_json(e.at(1)));
            } else {
                m(r, c) = real_from_json(e);
            }
        }
    }
    return m;
}

Json point_to_json(const ControlPoint& p) {
    Json j;
    j["theta"] = std::vector<double>(p.thetas().begin(), p.thetas().end());
    j["phi"] = std::vector<double>(p.phis().begin(), p.phis().end());
    return j;
}

ControlPoint point_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("theta") || !j.at("theta").is_array()) {
        throw InvalidArgument("point must be an object with a 'theta' array");
    }
    std::vector<double> theta;
    for (const auto& v : j.at("theta")) theta.push_back(real_from_json(v));
    std::vector<double> phi(theta.size(), 0.0);
    if (j.contains("phi")) {
        if (!j.at("phi").is_array() || j.at("phi").size() != theta.size()) {
            throw InvalidArgument("'phi' must be an array as long as 'theta'");
        }
        for (std::size_t k = 0; k < theta.size(); ++k) phi[k] = real_from_json(j.at("phi").at(k));
    }
    return ControlPoint::make(std::move(theta), std::move(phi));
}

Json connection_to_json(const ConnectionValue& c) {
    Json j;
    j["n"] = c.n;
    Json theta = Json::array();
    Json phi = Json::array();
    for (int b = 1; b <= c.n; ++b) {
        theta.push_back(matrix_to_json(c.theta(b)));
        phi.push_back(matrix_to_json(c.phi(b)));
    }
    j["a_theta"] = std::move(theta);
    j["a_phi"] = std::move(phi);
    j["symmetrization_defect"] = c.symmetrization_defect;
    return j;
}

namespace {

PlaneTag plane_from_json(const Json& j) {
    const Json& coords = j.at("coords");
    if (!coords.is_array() || coords.size() != 2) {
        throw InvalidArgument("plane.coords must name two coordinates");
    }
    return {Coord::parse(coords.at(0).get<std::string>()), Coord::parse(coords.at(1).get<std::string>())};
}

PlanePoint plane_point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw InvalidArgument("plane vertices must be [x, y] pairs");
    }
    return {real_from_json(j.at(0)), real_from_json(j.at(1))};
}

} // namespace

LoopDocument loop_from_json(const Json& j) {
    if (!j.is_object()) {
        throw InvalidArgument("loop must be a JSON object");
    }
    std::optional<LoopFamily> family;
    if (j.contains("family") && !j.at("family").is_null()) {
        family = parse_family(j.at("family").get<std::string>());
    }
    std::optional<int> segments;
    if (j.contains("segments_per_edge")) {
        segments = j.at("segments_per_edge").get<int>();
    }
    const int n = j.at("n").get<int>();
    std::optional<PlaneTag> plane;
    ControlPoint frozen = ControlPoint::origin(n);
    if (j.contains("plane") && !j.at("plane").is_null()) {
        plane = plane_from_json(j.at("plane"));
        if (j.at("plane").contains("frozen")) {
            frozen = point_from_json(j.at("plane").at("frozen"));
        }
        if (frozen.n() != n) {
            throw InvalidArgument("frozen point dimension differs from n");
        }
    }
    auto finish = [&](LoopPath loop) { return LoopDocument{std::move(loop), family, segments}; };

    if (j.contains("points")) {
        std::vector<ControlPoint> points;
        for (const auto& v : j.at("points")) {
            if (!v.is_array() || v.size() != 2) {
                throw InvalidArgument("each loop point must be [[theta...], [phi...]]");
            }
            points.push_back(point_from_json(Json{{"theta", v.at(0)}, {"phi", v.at(1)}}));
            if (points.back().n() != n) {
                throw InvalidArgument("loop point dimension differs from n");
            }
        }
        return finish(LoopPath::make(std::move(points), plane));
    }
    if (!plane) {
        throw InvalidArgument("'vertices' and 'rectangle' loops need a plane");
    }
    if (j.contains("vertices")) {
        std::vector<PlanePoint> vertices;
        for (const auto& v : j.at("vertices")) vertices.push_back(plane_point_from_json(v));
        return finish(polygon_loop(frozen, *plane, std::move(vertices)));
    }
    if (j.contains("rectangle")) {
        const Json& r = j.at("rectangle");
        const PlanePoint x = plane_point_from_json(r.at("x"));
        const PlanePoint y = plane_point_from_json(r.at("y"));
        const bool ccw = r.value("ccw", true);
        return finish(rectangle_loop(frozen, *plane, x[0], x[1], y[0], y[1], ccw));
    }
    throw InvalidArgument("loop needs 'points', 'vertices' or 'rectangle'");
}

Json loop_to_json(const LoopPath& loop, std::optional<LoopFamily> family) {
    Json j;
    j["n"] = loop.n();
    if (loop.plane()) {
        j["plane"] = {{"coords", {loop.plane()->first.to_string(), loop.plane()->second.to_string()}},
                      {"frozen", point_to_json(loop.base_point())}};
    } else {
        j["plane"] = nullptr;
    }
    j["family"] = family ? Json(to_string(*family)) : Json(nullptr);
    Json points = Json::array();
    for (const auto& p : loop.points()) {
        points.push_back(Json::array({std::vector<double>(p.thetas().begin(), p.thetas().end()),
                                      std::vector<double>(p.phis().begin(), p.phis().end())}));
    }
    j["points"] = std::move(points);
    j["orientation"] = loop.orientation();
    return j;
}

Json step_to_json(const GateStep& step, int n) {
    Json j;
    j["family"] = to_string(step.family);
    j["beta"] = step.beta;
    j["beta_bar"] = step.beta_bar ? Json(*step.beta_bar) : Json(nullptr);
    j["frozen"] = point_to_json(family_base_point(step, n));
    j["area"] = step.area;
    return j;
}

GateStep step_from_json(const Json& j) {
    GateStep step;
    step.family = parse_family(j.at("family").get<std::string>());
    step.beta = j.at("beta").get<int>();
    if (j.contains("beta_bar") && !j.at("beta_bar").is_null()) {
        step.beta_bar = j.at("beta_bar").get<int>();
    }
    step.area = real_from_json(j.at("area"));
    return step;
}

Json program_to_json(const GateProgram& program) {
    Json j;
    j["n"] = program.n;
    Json steps = Json::array();
    for (const auto& s : program.steps) steps.push_back(step_to_json(s, program.n));
    j["steps"] = std::move(steps);
    return j;
}

GateProgram program_from_json(const Json& j) {
    GateProgram program;
    program.n = j.at("n").get<int>();
    if (program.n < 1) {
        throw InvalidArgument("program n must be positive");
    }
    for (const auto& s : j.at("steps")) {
        program.steps.push_back(step_from_json(s));
        validate_step(program.steps.back(), program.n);
    }
    return program;
}

std::vector<CircuitGate> circuit_from_json(const Json& j) {
    if (!j.is_array()) {
        throw InvalidArgument("circuit must be a JSON array");
    }
    std::vector<CircuitGate> circuit;
    for (const auto& g : j) {
        const Json& pair = g.at("pair");
        if (!pair.is_array() || pair.size() != 2) {
            throw InvalidArgument("gate pair must be [i, j]");
        }
        const int a = pair.at(0).get<int>();
        const int b = pair.at(1).get<int>();
        const Json& gate = g.at("gate");
        if (gate.is_string()) {
            circuit.push_back(named_circuit_gate(a, b, parse_named_gate(gate.get<std::string>())));
        } else {
            circuit.push_back({a, b, matrix_from_json(gate.at("matrix")), std::nullopt});
        }
    }
    return circuit;
}

Json vector_to_json(const std::vector<double>& v) {
    return Json(v);
}

Json state_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v(k)));
    return out;
}

} // namespace hqc::io
