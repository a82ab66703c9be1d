#pragma once

// CP^n control chart, rotated eigenframe and the isospectral family
// H(lambda) = U(lambda) H0 U(lambda)^dagger with H0 = eps0 |n+1><n+1|.
//
// Levels are 1-based throughout the public interface (1..n are code levels,
// n+1 is the excited level). The implicit coordinates theta_{n+1} = pi/2 and
// phi_{n+1} = 0 are never stored.

#include "hqc/types.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

enum class CoordKind { theta, phi };

// One chart coordinate, e.g. theta_2 or phi_4.
struct Coord {
    CoordKind kind = CoordKind::theta;
    int level = 1;

    static Coord theta(int level) { return {CoordKind::theta, level}; }
    static Coord phi(int level) { return {CoordKind::phi, level}; }

    // "theta:2" / "phi:4"
    static Coord parse(std::string_view text);
    std::string to_string() const;

    friend bool operator==(const Coord&, const Coord&) = default;
};

// A point (theta_1..theta_n, phi_1..phi_n) of the chart.
class ControlPoint {
public:
    // Slack allowed when clamping theta into [0, pi/2].
    static constexpr double kChartSlack = 1e-12;

    static ControlPoint origin(int n);

    // Validates theta in [0, pi/2] and reduces phi modulo 2pi.
    static ControlPoint make(std::vector<double> theta, std::vector<double> phi);

    int n() const { return static_cast<int>(theta_.size()); }
    double theta(int level) const;
    double phi(int level) const;
    std::span<const double> thetas() const { return theta_; }
    std::span<const double> phis() const { return phi_; }

    double coordinate(Coord c) const;
    ControlPoint with(Coord c, double value) const;

    friend bool operator==(const ControlPoint&, const ControlPoint&) = default;

private:
    ControlPoint(std::vector<double> theta, std::vector<double> phi)
        : theta_(std::move(theta)), phi_(std::move(phi)) {}

    std::vector<double> theta_;
    std::vector<double> phi_;
};

// Coordinate difference b - a with phi differences wrapped into (-pi, pi].
struct ChartDelta {
    std::vector<double> theta;
    std::vector<double> phi;

    double max_abs() const;
};

ChartDelta chart_difference(const ControlPoint& a, const ControlPoint& b);

// a + t * delta, with theta clamped into the chart (slack only) and phi reduced.
ControlPoint chart_advance(const ControlPoint& a, const ChartDelta& delta, double t);

// Largest coordinate separation between two points (phi wrapped).
double chart_distance(const ControlPoint& a, const ControlPoint& b);

double wrap_angle(double phi);          // into [0, 2pi)
double wrap_difference(double dphi);    // into (-pi, pi]

struct HamiltonianFamily {
    int n = 1;
    double epsilon0 = 1.0;
};

// U(z) as the ordered product of the n planar rotations exp(G_alpha), with
// exp(G_1) acting first. Each factor is the closed 2x2 rotation embedded in
// the (alpha, n+1) plane.
Matrix frame_unitary(const ControlPoint& p);

// Closed-form rotated eigenstate |alpha(theta, phi)>, alpha in 1..n+1.
Vector eigenstate(const ControlPoint& p, int alpha);

// All n+1 closed-form eigenstates as columns.
Matrix eigenframe(const ControlPoint& p);

// eps0 |v><v| with v = eigenstate(p, n+1).
Matrix hamiltonian_at(const HamiltonianFamily& f, const ControlPoint& p);

} // namespace hqc
