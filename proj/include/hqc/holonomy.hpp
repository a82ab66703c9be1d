#pragma once

#include "hqc/loop.hpp"
#include "hqc/unitary.hpp"

namespace hqc {

inline constexpr int kDefaultSegmentsPerEdge = 64;

// Path-ordered holonomy of a closed loop in code-frame coordinates.
//
// Every edge is cut into `segments_per_edge` equal pieces; each piece
// contributes exp(-A(midpoint) . dlambda) with A from connection_analytic, and
// later pieces multiply on the left. The minus sign is the one adiabatic
// Schrodinger transport produces (c' = -A c in the moving frame), so the
// result is the matrix a slowly driven system actually applies to code
// amplitudes. The product is polar-projected; raw_defect() keeps the defect
// before projection.
UnitaryMatrix holonomy(const LoopPath& loop, int segments_per_edge = kDefaultSegmentsPerEdge);

// The same ordered product along an open path of points (no closure check).
Matrix path_transport(const std::vector<ControlPoint>& points, int segments_per_edge);

} // namespace hqc
