#pragma once

// Closed discretized loops in the chart and their loop algebra.

#include "hqc/cpn_model.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

enum class LoopFamily { C1, C2, C3, C4 };

LoopFamily parse_family(std::string_view text);
std::string to_string(LoopFamily f);

// The two coordinates a planar loop varies; every other coordinate is frozen
// at the value carried by the loop's points.
struct PlaneTag {
    Coord first;
    Coord second;

    friend bool operator==(const PlaneTag&, const PlaneTag&) = default;
};

// A vertex of a planar loop in (first, second) plane coordinates.
using PlanePoint = std::array<double, 2>;

class LoopPath {
public:
    // Points closer than this are treated as identical (closure test).
    static constexpr double kClosureTolerance = 1e-14;

    // Validates closure (first == last), at least 3 points, and that a tagged
    // loop only moves in its two plane coordinates.
    static LoopPath make(std::vector<ControlPoint> points, std::optional<PlaneTag> plane = std::nullopt,
                         int orientation = +1);

    // A loop that never leaves its base point.
    static LoopPath degenerate(const ControlPoint& base, std::optional<PlaneTag> plane = std::nullopt);

    const std::vector<ControlPoint>& points() const { return points_; }
    const ControlPoint& base_point() const { return points_.front(); }
    const std::optional<PlaneTag>& plane() const { return plane_; }
    int orientation() const { return orientation_; }
    int n() const { return points_.front().n(); }
    std::size_t edge_count() const { return points_.size() - 1; }

    friend bool operator==(const LoopPath&, const LoopPath&) = default;

private:
    LoopPath(std::vector<ControlPoint> points, std::optional<PlaneTag> plane, int orientation)
        : points_(std::move(points)), plane_(plane), orientation_(orientation) {}

    std::vector<ControlPoint> points_;
    std::optional<PlaneTag> plane_;
    int orientation_ = +1;
};

// Polygon through `vertices` in the given plane, all other coordinates frozen at
// `frozen`. The polygon is closed automatically; edges longer than pi/2 are
// subdivided so wrapped phi differences stay unambiguous.
LoopPath polygon_loop(const ControlPoint& frozen, const PlaneTag& plane, std::vector<PlanePoint> vertices);

// Axis-aligned rectangle [x0, x1] x [y0, y1] starting at (x0, y0); counter-clockwise
// means (x0,y0) -> (x1,y0) -> (x1,y1) -> (x0,y1).
LoopPath rectangle_loop(const ControlPoint& frozen, const PlaneTag& plane, double x0, double x1, double y0,
                        double y1, bool counter_clockwise = true);

// Regular polygon with `vertex_count` vertices approximating a counter-clockwise circle.
LoopPath circle_loop(const ControlPoint& frozen, const PlaneTag& plane, PlanePoint center, double radius,
                     int vertex_count);

// Traverses a, then b. Both must share the base point.
LoopPath concatenate(const LoopPath& a, const LoopPath& b);

LoopPath reverse(const LoopPath& loop);

// The plane a family's loops live in for level indices (beta, beta_bar).
PlaneTag family_plane(LoopFamily family, int beta, std::optional<int> beta_bar);

// Oriented area fixing each family's closed-form holonomy, computed as the
// signed line integral
//   C1: -oint sin^2(theta_b) dphi_b        C2: +oint sin^2(theta_b) dphi_bb
//   C3, C4 (b < bb): +oint sin(theta_b) dtheta_bb
//   C3, C4 (b > bb): -oint sin(theta_bb) dtheta_b
// evaluated exactly on each straight edge. Throws if the loop's plane tag does
// not fit the family.
double enclosed_area(const LoopPath& loop, LoopFamily family);

} // namespace hqc
