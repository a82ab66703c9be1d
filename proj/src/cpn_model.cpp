#include "hqc/cpn_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace hqc {

namespace {

void require_level(int level, int max_level, const char* what) {
    if (level < 1 || level > max_level) {
        std::ostringstream msg;
        msg << what << " level " << level << " outside 1.." << max_level;
        throw InvalidArgument(msg.str());
    }
}

// cos/sin of theta_alpha (0-based), with level n+1 fixed at theta = pi/2 exactly.
struct Trig {
    std::vector<double> c;
    std::vector<double> s;
    std::vector<Complex> e; // exp(i phi)
};

Trig trig_of(const ControlPoint& p) {
    const int n = p.n();
    Trig t;
    t.c.resize(n + 1);
    t.s.resize(n + 1);
    t.e.resize(n + 1);
    for (int a = 0; a < n; ++a) {
        t.c[a] = std::cos(p.thetas()[a]);
        t.s[a] = std::sin(p.thetas()[a]);
        t.e[a] = std::polar(1.0, p.phis()[a]);
    }
    t.c[n] = 0.0;
    t.s[n] = 1.0;
    t.e[n] = 1.0;
    return t;
}

} // namespace

Coord Coord::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw InvalidArgument("coordinate must look like theta:<level> or phi:<level>");
    }
    const auto kind = text.substr(0, colon);
    const auto digits = text.substr(colon + 1);
    int level = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), level);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw InvalidArgument("bad coordinate level in '" + std::string(text) + "'");
    }
    if (kind == "theta") {
        return theta(level);
    }
    if (kind == "phi") {
        return phi(level);
    }
    throw InvalidArgument("unknown coordinate kind '" + std::string(kind) + "'");
}

std::string Coord::to_string() const {
    return (kind == CoordKind::theta ? "theta:" : "phi:") + std::to_string(level);
}

double wrap_angle(double phi) {
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod can land exactly on 2pi after the shift for tiny negative inputs.
    return r >= kTwoPi ? 0.0 : r;
}

double wrap_difference(double dphi) {
    double r = std::remainder(dphi, kTwoPi);
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

ControlPoint ControlPoint::origin(int n) {
    if (n < 1) {
        throw InvalidArgument("n must be positive");
    }
    return ControlPoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0));
}

ControlPoint ControlPoint::make(std::vector<double> theta, std::vector<double> phi) {
    if (theta.empty() || theta.size() != phi.size()) {
        throw InvalidArgument("control point needs n >= 1 theta and phi values");
    }
    for (double& t : theta) {
        if (!std::isfinite(t) || t < -kChartSlack || t > kHalfPi + kChartSlack) {
            std::ostringstream msg;
            msg << "theta " << t << " outside the chart [0, pi/2]";
            throw InvalidArgument(msg.str());
        }
        t = std::clamp(t, 0.0, kHalfPi);
    }
    for (double& f : phi) {
        if (!std::isfinite(f)) {
            throw InvalidArgument("phi must be finite");
        }
        f = wrap_angle(f);
    }
    return ControlPoint(std::move(theta), std::move(phi));
}

double ControlPoint::theta(int level) const {
    require_level(level, n(), "theta");
    return theta_[level - 1];
}

double ControlPoint::phi(int level) const {
    require_level(level, n(), "phi");
    return phi_[level - 1];
}

double ControlPoint::coordinate(Coord c) const {
    return c.kind == CoordKind::theta ? theta(c.level) : phi(c.level);
}

ControlPoint ControlPoint::with(Coord c, double value) const {
    require_level(c.level, n(), "coordinate");
    std::vector<double> t = theta_;
    std::vector<double> f = phi_;
    (c.kind == CoordKind::theta ? t : f)[c.level - 1] = value;
    return make(std::move(t), std::move(f));
}

double ChartDelta::max_abs() const {
    double m = 0.0;
    for (double d : theta) {
        m = std::max(m, std::abs(d));
    }
    for (double d : phi) {
        m = std::max(m, std::abs(d));
    }
    return m;
}

ChartDelta chart_difference(const ControlPoint& a, const ControlPoint& b) {
    if (a.n() != b.n()) {
        throw InvalidArgument("control points of different n");
    }
    ChartDelta d;
    d.theta.resize(a.n());
    d.phi.resize(a.n());
    for (int k = 0; k < a.n(); ++k) {
        d.theta[k] = b.thetas()[k] - a.thetas()[k];
        d.phi[k] = wrap_difference(b.phis()[k] - a.phis()[k]);
    }
    return d;
}

ControlPoint chart_advance(const ControlPoint& a, const ChartDelta& delta, double t) {
    std::vector<double> th(a.thetas().begin(), a.thetas().end());
    std::vector<double> ph(a.phis().begin(), a.phis().end());
    for (std::size_t k = 0; k < th.size(); ++k) {
        th[k] = std::clamp(th[k] + t * delta.theta[k], 0.0, kHalfPi);
        ph[k] += t * delta.phi[k];
    }
    return ControlPoint::make(std::move(th), std::move(ph));
}

double chart_distance(const ControlPoint& a, const ControlPoint& b) {
    return chart_difference(a, b).max_abs();
}

Matrix frame_unitary(const ControlPoint& p) {
    const int n = p.n();
    Matrix u = Matrix::Identity(n + 1, n + 1);
    // exp(G_a) restricted to span{|a>, |n+1>}: [[c, e s], [-conj(e) s, c]].
    // Left-multiplying in order a = 1..n makes exp(G_1) act first.
    for (int a = 0; a < n; ++a) {
        const double c = std::cos(p.thetas()[a]);
        const double s = std::sin(p.thetas()[a]);
        const Complex e = std::polar(1.0, p.phis()[a]);
        for (int col = 0; col <= n; ++col) {
            const Complex top = u(a, col);
            const Complex bottom = u(n, col);
            u(a, col) = c * top + e * s * bottom;
            u(n, col) = -std::conj(e) * s * top + c * bottom;
        }
    }
    return u;
}

Matrix eigenframe(const ControlPoint& p) {
    const int n = p.n();
    const Trig t = trig_of(p);
    Matrix v = Matrix::Zero(n + 1, n + 1);
    for (int a = 0; a < n; ++a) {
        v(a, a) = t.c[a];
        const Complex lead = -std::conj(t.e[a]) * t.s[a];
        double chain = 1.0; // prod_{a < g < j} cos theta_g
        for (int j = a + 1; j <= n; ++j) {
            v(j, a) = lead * t.e[j] * t.s[j] * chain;
            chain *= t.c[j];
        }
    }
    double chain = 1.0; // prod_{g < j} cos theta_g
    for (int j = 0; j <= n; ++j) {
        v(j, n) = t.e[j] * t.s[j] * chain;
        chain *= t.c[j];
    }
    return v;
}

Vector eigenstate(const ControlPoint& p, int alpha) {
    require_level(alpha, p.n() + 1, "eigenstate");
    return eigenframe(p).col(alpha - 1);
}

Matrix hamiltonian_at(const HamiltonianFamily& f, const ControlPoint& p) {
    if (f.n != p.n()) {
        throw InvalidArgument("Hamiltonian family and control point disagree on n");
    }
    const Vector v = eigenstate(p, p.n() + 1);
    return f.epsilon0 * v * v.adjoint();
}

} // namespace hqc
