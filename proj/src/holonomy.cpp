#include "hqc/holonomy.hpp"

#include "hqc/connection.hpp"
#include "hqc/linalg.hpp"

namespace hqc {

Matrix path_transport(const std::vector<ControlPoint>& points, int segments_per_edge) {
    if (segments_per_edge < 1) {
        throw InvalidArgument("segments_per_edge must be >= 1");
    }
    if (points.empty()) {
        throw InvalidArgument("empty path");
    }
    const int n = points.front().n();
    Matrix product = Matrix::Identity(n, n);
    for (std::size_t k = 1; k < points.size(); ++k) {
        const ControlPoint& start = points[k - 1];
        ChartDelta step = chart_difference(start, points[k]);
        if (step.max_abs() == 0.0) {
            continue;
        }
        for (auto& d : step.theta) d /= segments_per_edge;
        for (auto& d : step.phi) d /= segments_per_edge;
        for (int j = 0; j < segments_per_edge; ++j) {
            const ControlPoint mid = chart_advance(start, step, j + 0.5);
            const Matrix generator = -connection_analytic(mid).contract(step);
            product = linalg::expm_antihermitian(generator) * product;
        }
    }
    if (!linalg::all_finite(product)) {
        throw NumericalError("non-finite entries in path-ordered product");
    }
    return product;
}

UnitaryMatrix holonomy(const LoopPath& loop, int segments_per_edge) {
    return UnitaryMatrix::project(path_transport(loop.points(), segments_per_edge));
}

} // namespace hqc
