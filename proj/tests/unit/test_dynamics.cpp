#include "oracles.hpp"

#include "hqc/dynamics.hpp"
#include "hqc/linalg.hpp"

#include <doctest.h>

using namespace hqc;

namespace {

LoopPath c1_loop(double area, int n = 1) {
    return realize_step_as_loop({LoopFamily::C1, 1, std::nullopt, area}, n);
}

} // namespace

TEST_CASE("ramp endpoints and flat ends") {
    CHECK(ramp_value(Ramp::smoothstep, 0.0) == 0.0);
    CHECK(ramp_value(Ramp::smoothstep, 1.0) == 1.0);
    CHECK(ramp_value(Ramp::smoothstep, 0.5) == doctest::Approx(0.5));
    const double h = 1e-6;
    CHECK(ramp_value(Ramp::smoothstep, h) / h < 1e-5);
    CHECK((1.0 - ramp_value(Ramp::smoothstep, 1.0 - h)) / h < 1e-5);
    CHECK(ramp_value(Ramp::linear, 0.3) == doctest::Approx(0.3));
    CHECK(parse_ramp("linear") == Ramp::linear);
    CHECK_THROWS_AS(parse_ramp("cubic"), InvalidArgument);
}

TEST_CASE("loop parametrization visits the loop at constant speed") {
    const LoopPath loop = c1_loop(kHalfPi);
    const LoopParametrization param(loop);
    CHECK(param.length() == doctest::Approx(2.0 * kPi));
    CHECK(param.at(0.0) == loop.base_point());
    CHECK(chart_distance(param.at(1.0), loop.base_point()) < 1e-15);
    CHECK(param.at(0.25).theta(1) == doctest::Approx(0.0));
    CHECK(param.at(0.25).phi(1) == doctest::Approx(kHalfPi));
    CHECK(param.at(0.5).theta(1) == doctest::Approx(kHalfPi));
}

TEST_CASE("effective steps respect the phase bound") {
    const HamiltonianFamily f{1, 1.0};
    CHECK(effective_steps(f, {c1_loop(0.1), 10.0, Ramp::smoothstep, 0}) == kMinScheduleSteps);
    CHECK(effective_steps(f, {c1_loop(0.1), 2000.0, Ramp::smoothstep, 0}) == 40000);
    CHECK(effective_steps(f, {c1_loop(0.1), 2000.0, Ramp::smoothstep, 50000}) == 50000);
    CHECK_THROWS_AS(effective_steps(f, {c1_loop(0.1), 0.0, Ramp::smoothstep, 0}), InvalidArgument);
    CHECK_THROWS_AS(effective_steps(f, {c1_loop(0.1), -1.0, Ramp::smoothstep, 0}), InvalidArgument);
}

TEST_CASE("degenerate loop: identity transport, no leakage, no dynamical phase") {
    std::mt19937_64 rng(61);
    const ControlPoint base = oracle::random_point(3, rng);
    const TransportReport r = adiabatic_transport({3, 1.0}, {LoopPath::degenerate(base), 50.0, Ramp::smoothstep, 0});
    CHECK(oracle::max_abs(r.raw_overlaps - Matrix::Identity(3, 3)) < 1e-12);
    CHECK(r.max_leakage < 1e-12);
    CHECK(r.distance_to_holonomy < 1e-12);
}

TEST_CASE("adiabatic C1 transport reproduces the closed form") {
    const TransportReport r = adiabatic_transport({1, 1.0}, {c1_loop(kPi / 4), 2000.0, Ramp::smoothstep, 0});
    CHECK(std::abs(r.transport.matrix()(0, 0) - std::polar(1.0, -kPi / 4)) < 1e-2);
    CHECK(r.max_leakage < 1e-3);
    CHECK(r.adiabatic);
    CHECK(r.steps == 40000);
}

TEST_CASE("adiabatic error decreases with total time") {
    const LoopPath loop = c1_loop(kPi / 4);
    const double e1 = adiabatic_transport({1, 1.0}, {loop, 200.0, Ramp::smoothstep, 0}).distance_to_holonomy;
    const double e2 = adiabatic_transport({1, 1.0}, {loop, 2000.0, Ramp::smoothstep, 0}).distance_to_holonomy;
    CHECK(e2 < e1 / 2);
}

TEST_CASE("fast transport leaks and is flagged") {
    const TransportReport r = adiabatic_transport({1, 1.0}, {c1_loop(kHalfPi), 2.0, Ramp::smoothstep, 0});
    CHECK(r.max_leakage > 1e-3);
    CHECK_FALSE(r.adiabatic);
    CHECK(linalg::unitarity_defect(r.transport.matrix()) < 1e-12);
}

TEST_CASE("oracle agreement for every family and for CROT") {
    const int n = 3;
    const std::vector<GateStep> steps = {
        {LoopFamily::C1, 2, std::nullopt, 0.9},
        {LoopFamily::C2, 1, 3, -0.6},
        {LoopFamily::C3, 1, 2, 0.7},
        {LoopFamily::C3, 3, 1, -0.5},
        {LoopFamily::C4, 2, 3, 0.8},
    };
    for (const auto& s : steps) {
        const GateProgram p{n, {s}};
        const ProgramVerification slow = verify_program({n, 1.0}, p, 2000.0);
        const ProgramVerification fast = verify_program({n, 1.0}, p, 200.0);
        CHECK(slow.distance < 5e-2);
        CHECK(slow.distance < fast.distance);
        CHECK(slow.max_leakage < 1e-3);
    }
    const ProgramVerification crot = verify_program({4, 1.0}, two_qubit_gate(NamedGate::CROT), 2000.0);
    CHECK(crot.distance < 5e-2);
    CHECK(crot.loops == 2);
    CHECK(crot.leakage.size() == 4);
}

TEST_CASE("kick evolution with a frozen schedule is free evolution") {
    const double t = 3.7;
    const Schedule sched{LoopPath::degenerate(ControlPoint::origin(2)), t, Ramp::smoothstep, 0};
    const Matrix k = kick_evolution({2, 1.3}, make_kick_plan(sched, 17)).matrix();
    Matrix expected = Matrix::Identity(3, 3);
    expected(2, 2) = std::polar(1.0, -1.3 * t);
    CHECK(oracle::max_abs(k - expected) < 1e-12);
}

TEST_CASE("kick plans sample the schedule") {
    const Schedule sched{c1_loop(0.5), 10.0, Ramp::smoothstep, 0};
    const KickPlan plan = make_kick_plan(sched, 40);
    CHECK(plan.lambdas.size() == 41);
    CHECK(plan.delta_t * plan.intervals == doctest::Approx(10.0));
    CHECK(plan.lambdas.front() == sched.loop.base_point());
    CHECK(chart_distance(plan.lambdas.back(), sched.loop.base_point()) < 1e-14);
    CHECK_THROWS_AS(make_kick_plan(sched, 0), InvalidArgument);
}

TEST_CASE("kick evolution converges at first order") {
    const HamiltonianFamily f{1, 1.0};
    const Schedule sched{c1_loop(kPi / 4), 20.0, Ramp::smoothstep, 0};
    const Matrix reference = continuous_propagator(f, sched, 100000).matrix();
    double previous = 0.0;
    for (int n : {250, 500, 1000}) {
        const double d = linalg::operator_norm(kick_evolution(f, make_kick_plan(sched, n)).matrix() - reference);
        if (previous > 0.0) {
            CHECK(previous / d > 1.6);
            CHECK(previous / d < 2.4);
        }
        previous = d;
    }
}

TEST_CASE("kick pipeline reproduces the C1 phase on the code") {
    const HamiltonianFamily f{1, 1.0};
    const Schedule sched{c1_loop(kPi / 4), 2000.0, Ramp::smoothstep, 0};
    const Matrix k = kick_evolution(f, make_kick_plan(sched, 200000)).matrix();
    CHECK(std::abs(k(0, 0) - std::polar(1.0, -kPi / 4)) < 5e-2);
}

TEST_CASE("continuous propagator has the right spectrum phase on a frozen path") {
    const Schedule sched{LoopPath::degenerate(ControlPoint::origin(1)), 5.0, Ramp::smoothstep, 0};
    const Matrix u = continuous_propagator({1, 2.0}, sched, 1000).matrix();
    CHECK(std::abs(u(1, 1) - std::polar(1.0, -10.0)) < 1e-12);
    CHECK(std::abs(u(0, 0) - 1.0) < 1e-15);
    CHECK(linalg::unitarity_defect(u) < 1e-12);
}

TEST_CASE("time-scale ordering") {
    const Schedule sched{c1_loop(0.5), 1.0, Ramp::smoothstep, 0};
    const KickPlan plan = make_kick_plan(sched, 1000); // dt = 1e-3
    const TimescaleReport ok = timescale_check(plan, 1e-3, 1e3);
    CHECK(ok.ok);
    for (const auto& e : ok.entries) CHECK(e.status == Relation::pass);

    const KickPlan coarse = make_kick_plan({c1_loop(0.5), 2.0, Ramp::smoothstep, 0}, 1); // dt = 2
    const TimescaleReport bad = timescale_check(coarse, 1e-3, 1e3);
    CHECK_FALSE(bad.ok);
    CHECK(bad.entries[1].status == Relation::violated);
    CHECK(bad.entries[1].ratio == doctest::Approx(0.5));

    const KickPlan edge = make_kick_plan({c1_loop(0.5), 1.0, Ramp::smoothstep, 0}, 10); // dt = 0.1
    const TimescaleReport marginal = timescale_check(edge, 0.1, 10.0);
    CHECK_FALSE(marginal.ok);
    CHECK(marginal.entries[0].status == Relation::pass);
    CHECK(marginal.entries[1].status == Relation::marginal);
    CHECK(marginal.entries[2].status == Relation::marginal);

    const TimescaleReport slow_kicks = timescale_check(plan, 2e-3, 1e3);
    CHECK(slow_kicks.entries[0].status == Relation::violated);
    CHECK_THROWS_AS(timescale_check(plan, 0.0, 1.0), InvalidArgument);
}
