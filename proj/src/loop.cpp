#include "hqc/loop.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqc {

namespace {

constexpr double kMaxPolygonEdge = kHalfPi;

double sinc(double x) {
    return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

bool same_point(const ControlPoint& a, const ControlPoint& b) {
    return chart_distance(a, b) <= LoopPath::kClosureTolerance;
}

void check_plane(const PlaneTag& plane, int n) {
    for (Coord c : {plane.first, plane.second}) {
        if (c.level < 1 || c.level > n) {
            throw InvalidArgument("plane coordinate " + c.to_string() + " outside 1..n");
        }
    }
    if (plane.first == plane.second) {
        throw InvalidArgument("plane coordinates must differ");
    }
}

// Only the two plane coordinates may differ from the base point.
void check_in_plane(const ControlPoint& base, const ControlPoint& p, const PlaneTag& plane) {
    const ChartDelta d = chart_difference(base, p);
    for (int k = 1; k <= base.n(); ++k) {
        for (Coord c : {Coord::theta(k), Coord::phi(k)}) {
            if (c == plane.first || c == plane.second) {
                continue;
            }
            const double delta = c.kind == CoordKind::theta ? d.theta[k - 1] : d.phi[k - 1];
            if (std::abs(delta) > LoopPath::kClosureTolerance) {
                throw InvalidArgument("loop point leaves its tagged plane along " + c.to_string());
            }
        }
    }
}

double delta_of(const ChartDelta& d, Coord c) {
    return c.kind == CoordKind::theta ? d.theta[c.level - 1] : d.phi[c.level - 1];
}

} // namespace

LoopFamily parse_family(std::string_view text) {
    if (text == "C1") return LoopFamily::C1;
    if (text == "C2") return LoopFamily::C2;
    if (text == "C3") return LoopFamily::C3;
    if (text == "C4") return LoopFamily::C4;
    throw InvalidArgument("unknown loop family '" + std::string(text) + "'");
}

std::string to_string(LoopFamily f) {
    switch (f) {
    case LoopFamily::C1: return "C1";
    case LoopFamily::C2: return "C2";
    case LoopFamily::C3: return "C3";
    case LoopFamily::C4: return "C4";
    }
    return "?";
}

LoopPath LoopPath::make(std::vector<ControlPoint> points, std::optional<PlaneTag> plane, int orientation) {
    if (points.size() < 3) {
        throw InvalidArgument("a loop needs at least 3 points");
    }
    const int n = points.front().n();
    for (const auto& p : points) {
        if (p.n() != n) {
            throw InvalidArgument("loop points disagree on n");
        }
    }
    if (!same_point(points.front(), points.back())) {
        throw InvalidArgument("loop is not closed: first and last points differ");
    }
    if (orientation != 1 && orientation != -1) {
        throw InvalidArgument("orientation must be +1 or -1");
    }
    if (plane) {
        check_plane(*plane, n);
        for (const auto& p : points) {
            check_in_plane(points.front(), p, *plane);
        }
    }
    return LoopPath(std::move(points), plane, orientation);
}

LoopPath LoopPath::degenerate(const ControlPoint& base, std::optional<PlaneTag> plane) {
    return make({base, base, base}, plane);
}

LoopPath polygon_loop(const ControlPoint& frozen, const PlaneTag& plane, std::vector<PlanePoint> vertices) {
    check_plane(plane, frozen.n());
    if (vertices.empty()) {
        throw InvalidArgument("polygon needs vertices");
    }
    if (vertices.front() != vertices.back()) {
        vertices.push_back(vertices.front());
    }
    auto at = [&](const PlanePoint& v) {
        return frozen.with(plane.first, v[0]).with(plane.second, v[1]);
    };
    std::vector<ControlPoint> points;
    points.push_back(at(vertices.front()));
    for (std::size_t k = 1; k < vertices.size(); ++k) {
        const PlanePoint& a = vertices[k - 1];
        const PlanePoint& b = vertices[k];
        const double span = std::max(std::abs(b[0] - a[0]), std::abs(b[1] - a[1]));
        const int pieces = std::max(1, static_cast<int>(std::ceil(span / kMaxPolygonEdge - 1e-12)));
        for (int j = 1; j <= pieces; ++j) {
            const double t = static_cast<double>(j) / pieces;
            points.push_back(at({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])}));
        }
    }
    while (points.size() < 3) {
        points.push_back(points.front());
    }
    return LoopPath::make(std::move(points), plane);
}

LoopPath rectangle_loop(const ControlPoint& frozen, const PlaneTag& plane, double x0, double x1, double y0,
                        double y1, bool counter_clockwise) {
    std::vector<PlanePoint> v = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
    if (!counter_clockwise) {
        std::reverse(v.begin(), v.end());
    }
    return polygon_loop(frozen, plane, std::move(v));
}

LoopPath circle_loop(const ControlPoint& frozen, const PlaneTag& plane, PlanePoint center, double radius,
                     int vertex_count) {
    if (vertex_count < 3) {
        throw InvalidArgument("circle needs at least 3 vertices");
    }
    std::vector<PlanePoint> v;
    v.reserve(vertex_count + 1);
    for (int k = 0; k <= vertex_count; ++k) {
        const double a = kTwoPi * (k % vertex_count) / vertex_count;
        v.push_back({center[0] + radius * std::cos(a), center[1] + radius * std::sin(a)});
    }
    return polygon_loop(frozen, plane, std::move(v));
}

LoopPath concatenate(const LoopPath& a, const LoopPath& b) {
    if (!same_point(a.base_point(), b.base_point())) {
        throw InvalidArgument("cannot concatenate loops with different base points");
    }
    std::vector<ControlPoint> points = a.points();
    points.insert(points.end(), b.points().begin() + 1, b.points().end());
    const std::optional<PlaneTag> plane = a.plane() == b.plane() ? a.plane() : std::nullopt;
    return LoopPath::make(std::move(points), plane, a.orientation());
}

LoopPath reverse(const LoopPath& loop) {
    std::vector<ControlPoint> points(loop.points().rbegin(), loop.points().rend());
    return LoopPath::make(std::move(points), loop.plane(), -loop.orientation());
}

PlaneTag family_plane(LoopFamily family, int beta, std::optional<int> beta_bar) {
    switch (family) {
    case LoopFamily::C1:
        return {Coord::theta(beta), Coord::phi(beta)};
    case LoopFamily::C2:
        if (!beta_bar) throw InvalidArgument("C2 needs beta_bar");
        return {Coord::theta(beta), Coord::phi(*beta_bar)};
    case LoopFamily::C3:
    case LoopFamily::C4:
        if (!beta_bar) throw InvalidArgument(to_string(family) + " needs beta_bar");
        return {Coord::theta(beta), Coord::theta(*beta_bar)};
    }
    throw InvalidArgument("unknown family");
}

double enclosed_area(const LoopPath& loop, LoopFamily family) {
    if (!loop.plane()) {
        throw InvalidArgument("enclosed_area needs a plane-tagged loop");
    }
    const PlaneTag plane = *loop.plane();
    const Coord x = plane.first;
    const Coord y = plane.second;
    const bool fits = [&] {
        switch (family) {
        case LoopFamily::C1:
            return x.kind == CoordKind::theta && y.kind == CoordKind::phi && x.level == y.level;
        case LoopFamily::C2:
            return x.kind == CoordKind::theta && y.kind == CoordKind::phi && x.level != y.level;
        case LoopFamily::C3:
        case LoopFamily::C4:
            return x.kind == CoordKind::theta && y.kind == CoordKind::theta;
        }
        return false;
    }();
    if (!fits) {
        std::ostringstream msg;
        msg << "plane (" << x.to_string() << ", " << y.to_string() << ") does not fit family "
            << to_string(family);
        throw InvalidArgument(msg.str());
    }

    double total = 0.0;
    const auto& pts = loop.points();
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const ChartDelta d = chart_difference(pts[k - 1], pts[k]);
        const double x0 = pts[k - 1].coordinate(x);
        const double y0 = pts[k - 1].coordinate(y);
        const double dx = delta_of(d, x);
        const double dy = delta_of(d, y);
        switch (family) {
        case LoopFamily::C1:
        case LoopFamily::C2: {
            // int sin^2 x dy along the edge = dy (1 - cos(2 x_mid) sinc(dx)) / 2
            const double xm = x0 + 0.5 * dx;
            total += 0.5 * dy * (1.0 - std::cos(2.0 * xm) * sinc(dx));
            break;
        }
        case LoopFamily::C3:
        case LoopFamily::C4:
            if (x.level < y.level) {
                total += dy * std::sin(x0 + 0.5 * dx) * sinc(0.5 * dx);
            } else {
                total -= dx * std::sin(y0 + 0.5 * dy) * sinc(0.5 * dy);
            }
            break;
        }
    }
    return family == LoopFamily::C1 ? -total : total;
}

} // namespace hqc
