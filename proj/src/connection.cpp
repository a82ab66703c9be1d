#include "hqc/connection.hpp"

#include "hqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqc {

Matrix ConnectionValue::contract(const ChartDelta& d) const {
    Matrix out = Matrix::Zero(n, n);
    for (int b = 0; b < n; ++b) {
        if (d.theta[b] != 0.0) {
            out += d.theta[b] * a_theta[b];
        }
        if (d.phi[b] != 0.0) {
            out += d.phi[b] * a_phi[b];
        }
    }
    return out;
}

ConnectionValue connection_analytic(const ControlPoint& p) {
    const int n = p.n();
    std::vector<double> c(n), s(n), ph(n);
    for (int k = 0; k < n; ++k) {
        c[k] = std::cos(p.thetas()[k]);
        s[k] = std::sin(p.thetas()[k]);
        ph[k] = p.phis()[k];
    }
    // chain(x, y) = prod_{x < g < y} cos theta_g
    std::vector<double> chain_table(static_cast<std::size_t>(n) * n, 1.0);
    auto chain = [&](int x, int y) -> double& { return chain_table[static_cast<std::size_t>(x) * n + y]; };
    for (int x = 0; x < n; ++x) {
        double prod = 1.0;
        for (int y = x + 1; y < n; ++y) {
            chain(x, y) = prod;
            prod *= c[y];
        }
    }
    auto phase = [&](int row, int col) { return std::polar(1.0, ph[row] - ph[col]); };
    auto put = [](Matrix& m, int row, int col, Complex v) {
        m(row, col) = v;
        if (row != col) {
            m(col, row) = -std::conj(v);
        }
    };

    ConnectionValue out;
    out.n = n;
    out.a_theta.assign(n, Matrix::Zero(n, n));
    out.a_phi.assign(n, Matrix::Zero(n, n));

    for (int b = 0; b < n; ++b) {
        Matrix& at = out.a_theta[b];
        for (int r = 0; r < b; ++r) {
            put(at, r, b, phase(r, b) * s[r] * chain(r, b));
        }

        Matrix& ap = out.a_phi[b];
        // Column beta, rows r <= beta; the product runs over r < g <= beta.
        for (int r = 0; r <= b; ++r) {
            const double prod = (r == b) ? 1.0 : chain(r, b) * c[b];
            put(ap, r, b, -kI * phase(r, b) * s[b] * s[r] * prod);
        }
        // Columns a < beta, rows r <= a.
        const double sb2 = s[b] * s[b];
        for (int a = 0; a < b; ++a) {
            for (int r = 0; r <= a; ++r) {
                put(ap, r, a, kI * phase(r, a) * s[a] * s[r] * sb2 * chain(a, b) * chain(r, b));
            }
        }
    }
    return out;
}

ConnectionValue connection_numeric(const ControlPoint& p, double step) {
    if (!(step > 0.0)) {
        throw InvalidDiscretization("difference step must be positive");
    }
    const int n = p.n();
    const Matrix frame = eigenframe(p).leftCols(n);

    ConnectionValue out;
    out.n = n;
    out.a_theta.reserve(n);
    out.a_phi.reserve(n);

    auto derivative = [&](Coord mu) {
        const double x = p.coordinate(mu);
        if (mu.kind == CoordKind::theta && (x - step < 0.0 || x + step > kHalfPi)) {
            std::ostringstream msg;
            msg << "central difference with step " << step << " leaves the chart at " << mu.to_string()
                << " = " << x;
            throw InvalidDiscretization(msg.str());
        }
        const Matrix plus = eigenframe(p.with(mu, x + step)).leftCols(n);
        const Matrix minus = eigenframe(p.with(mu, x - step)).leftCols(n);
        Matrix m = frame.adjoint() * (plus - minus) / (2.0 * step);
        out.symmetrization_defect = std::max(out.symmetrization_defect, linalg::antihermitian_defect(m));
        return Matrix(0.5 * (m - m.adjoint()));
    };

    for (int b = 1; b <= n; ++b) {
        out.a_theta.push_back(derivative(Coord::theta(b)));
    }
    for (int b = 1; b <= n; ++b) {
        out.a_phi.push_back(derivative(Coord::phi(b)));
    }
    return out;
}

double connection_distance(const ConnectionValue& a, const ConnectionValue& b) {
    if (a.n != b.n) {
        throw InvalidArgument("connections of different n");
    }
    double d = 0.0;
    for (int k = 0; k < a.n; ++k) {
        d = std::max(d, linalg::max_abs(a.a_theta[k] - b.a_theta[k]));
        d = std::max(d, linalg::max_abs(a.a_phi[k] - b.a_phi[k]));
    }
    return d;
}

} // namespace hqc
