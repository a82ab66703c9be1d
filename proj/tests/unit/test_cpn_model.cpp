#include "oracles.hpp"

#include "hqc/cpn_model.hpp"
#include "hqc/linalg.hpp"

#include <doctest.h>

using namespace hqc;

TEST_CASE("frame at the origin is the identity") {
    for (int n : {1, 2, 4}) {
        CHECK(oracle::max_abs(frame_unitary(ControlPoint::origin(n)) - Matrix::Identity(n + 1, n + 1)) == 0.0);
    }
}

TEST_CASE("n=1 frame at theta=pi/2 is the quarter rotation") {
    const Matrix u = frame_unitary(ControlPoint::make({kHalfPi}, {0.0}));
    Matrix expected(2, 2);
    expected << 0.0, 1.0, -1.0, 0.0;
    CHECK(oracle::max_abs(u - expected) < 1e-15);
}

TEST_CASE("frame matches the ordered product of generator exponentials") {
    std::mt19937_64 rng(11);
    for (int n : {1, 2, 3, 4}) {
        for (int k = 0; k < 25; ++k) {
            const ControlPoint p = oracle::random_point(n, rng);
            CHECK(oracle::max_abs(frame_unitary(p) - oracle::frame(p)) < 1e-12);
        }
    }
}

TEST_CASE("frame is unitary") {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 50; ++k) {
        const Matrix u = frame_unitary(oracle::random_point(4, rng));
        CHECK(oracle::max_abs(u * u.adjoint() - Matrix::Identity(5, 5)) < 1e-12);
    }
}

TEST_CASE("eigenstate at the origin is a basis vector") {
    for (int alpha = 1; alpha <= 3; ++alpha) {
        const Vector v = eigenstate(ControlPoint::origin(2), alpha);
        CHECK(oracle::max_abs(v - Vector::Unit(3, alpha - 1)) == 0.0);
    }
}

TEST_CASE("n=2 eigenstate example") {
    const Vector v = eigenstate(ControlPoint::make({kPi / 4.0, 0.0}, {0.0, 0.0}), 1);
    Vector expected(3);
    expected << 1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0);
    CHECK(oracle::max_abs(v - expected) < 1e-15);
}

TEST_CASE("eigenstates equal frame columns and are orthonormal") {
    std::mt19937_64 rng(13);
    double worst = 0.0;
    double worst_overlap = 0.0;
    for (int n : {1, 2, 4}) {
        for (int k = 0; k < 200; ++k) {
            const ControlPoint p = oracle::random_point(n, rng);
            const Matrix u = frame_unitary(p);
            Matrix cols(n + 1, n + 1);
            for (int a = 1; a <= n + 1; ++a) {
                cols.col(a - 1) = eigenstate(p, a);
                worst = std::max(worst, oracle::max_abs(cols.col(a - 1) - u.col(a - 1)));
            }
            worst_overlap = std::max(worst_overlap, oracle::max_abs(cols.adjoint() * cols - Matrix::Identity(n + 1, n + 1)));
        }
    }
    CHECK(worst < 1e-10);
    CHECK(worst_overlap < 1e-12);
}

TEST_CASE("eigenstate rejects out-of-range levels") {
    CHECK_THROWS_AS(eigenstate(ControlPoint::origin(2), 0), InvalidArgument);
    CHECK_THROWS_AS(eigenstate(ControlPoint::origin(2), 4), InvalidArgument);
}

TEST_CASE("hamiltonian at the origin") {
    const Matrix h = hamiltonian_at({3, 2.5}, ControlPoint::origin(3));
    Matrix expected = Matrix::Zero(4, 4);
    expected(3, 3) = 2.5;
    CHECK(oracle::max_abs(h - expected) == 0.0);
}

TEST_CASE("isospectrality on random points") {
    std::mt19937_64 rng(14);
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 4;
        const double eps0 = 0.5 + 0.01 * k;
        const Matrix h = hamiltonian_at({n, eps0}, oracle::random_point(n, rng));
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const auto& ev = es.eigenvalues();
        for (int a = 0; a < n; ++a) CHECK(std::abs(ev(a)) < 1e-10);
        CHECK(std::abs(ev(n) - eps0) < 1e-10);
    }
}

TEST_CASE("restricted n=1 Hamiltonian is a Bloch-vector form up to the trace shift") {
    const double eps0 = 1.7;
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;
    std::mt19937_64 rng(15);
    for (int k = 0; k < 20; ++k) {
        const ControlPoint p = oracle::random_point(1, rng);
        const double t = 2.0 * p.theta(1);
        const double f = p.phi(1);
        const Matrix h = hamiltonian_at({1, eps0}, p) - 0.5 * eps0 * Matrix::Identity(2, 2);
        // Ordered basis (|2>, |1>): +(eps0/2) B(2 theta, phi) . sigma.
        Matrix swapped(2, 2);
        swapped << h(1, 1), h(1, 0), h(0, 1), h(0, 0);
        const Matrix bloch = std::sin(t) * std::cos(f) * sx + std::sin(t) * std::sin(f) * sy + std::cos(t) * sz;
        CHECK(oracle::max_abs(swapped - 0.5 * eps0 * bloch) < 1e-12);
        // Basis (|1>, |2>): -(eps0/2) B(2 theta, pi - phi) . sigma.
        const double g = kPi - f;
        const Matrix mirrored = std::sin(t) * std::cos(g) * sx + std::sin(t) * std::sin(g) * sy + std::cos(t) * sz;
        CHECK(oracle::max_abs(h + 0.5 * eps0 * mirrored) < 1e-12);
    }
}

TEST_CASE("frame derivative converges at second order") {
    std::mt19937_64 rng(16);
    const ControlPoint p = oracle::random_point(3, rng, 0.3, 1.2);
    for (Coord c : {Coord::theta(1), Coord::theta(3), Coord::phi(2)}) {
        auto derivative = [&](double h) {
            return Matrix((frame_unitary(p.with(c, p.coordinate(c) + h)) - frame_unitary(p.with(c, p.coordinate(c) - h))) /
                          (2.0 * h));
        };
        const double h = 0.05;
        const double e1 = oracle::max_abs(derivative(h) - derivative(h / 2));
        const double e2 = oracle::max_abs(derivative(h / 2) - derivative(h / 4));
        const double ratio = e1 / e2;
        CHECK(ratio > 3.2);
        CHECK(ratio < 4.8);
    }
}

TEST_CASE("control point validation") {
    CHECK_THROWS_AS(ControlPoint::make({-0.1}, {0.0}), InvalidArgument);
    CHECK_THROWS_AS(ControlPoint::make({kHalfPi + 1e-6}, {0.0}), InvalidArgument);
    CHECK_THROWS_AS(ControlPoint::make({0.1, 0.2}, {0.0}), InvalidArgument);
    CHECK_THROWS_AS(ControlPoint::make({}, {}), InvalidArgument);
    const ControlPoint p = ControlPoint::make({kHalfPi + 1e-13}, {-kHalfPi});
    CHECK(p.theta(1) == kHalfPi);
    CHECK(p.phi(1) == doctest::Approx(3.0 * kHalfPi));
    CHECK(ControlPoint::make({0.0}, {kTwoPi}).phi(1) == 0.0);
}

TEST_CASE("coordinate names round-trip") {
    CHECK(Coord::parse("theta:3") == Coord::theta(3));
    CHECK(Coord::parse("phi:1") == Coord::phi(1));
    CHECK(Coord::phi(2).to_string() == "phi:2");
    CHECK_THROWS_AS(Coord::parse("psi:1"), InvalidArgument);
    CHECK_THROWS_AS(Coord::parse("theta"), InvalidArgument);
    CHECK_THROWS_AS(Coord::parse("theta:x"), InvalidArgument);
}

TEST_CASE("chart differences wrap phi") {
    const ControlPoint a = ControlPoint::make({0.1}, {0.1});
    const ControlPoint b = ControlPoint::make({0.1}, {kTwoPi - 0.1});
    CHECK(chart_difference(a, b).phi[0] == doctest::Approx(-0.2));
    CHECK(chart_distance(a, b) == doctest::Approx(0.2));
    CHECK(wrap_difference(kPi) == doctest::Approx(kPi));
    CHECK(wrap_difference(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
}
