#pragma once

// Dynamical oracles: adiabatic Schrodinger transport of the code around a loop,
// the repeated-pulse kick product, and the time-scale ordering check.

#include "hqc/gate_synthesis.hpp"
#include "hqc/holonomy.hpp"

#include <string>
#include <vector>

namespace hqc {

enum class Ramp { smoothstep, linear };

Ramp parse_ramp(std::string_view text);
std::string to_string(Ramp r);

// s(x) on [0, 1]; smoothstep is 3x^2 - 2x^3.
double ramp_value(Ramp r, double x);

// Largest eps0 * dt the propagators accept.
inline constexpr double kMaxPhaseStep = 0.05;
inline constexpr int kMinScheduleSteps = 1000;
// Default adiabatic budget eps0 * T per loop.
inline constexpr double kDefaultAdiabaticTime = 2000.0;
inline constexpr double kDefaultLeakageBound = 1e-3;

struct Schedule {
    LoopPath loop;
    double total_time = kDefaultAdiabaticTime;
    Ramp ramp = Ramp::smoothstep;
    int steps = 0; // 0 selects the default
};

// Step count actually used: max(steps, kMinScheduleSteps, ceil(eps0 T / kMaxPhaseStep)).
int effective_steps(const HamiltonianFamily& f, const Schedule& sched);

// Constant-speed (chart arc length) parametrization of a loop, s in [0, 1].
class LoopParametrization {
public:
    explicit LoopParametrization(const LoopPath& loop);

    ControlPoint at(double s) const;
    double length() const { return cumulative_.back(); }

private:
    std::vector<ControlPoint> points_;
    std::vector<double> cumulative_;
};

// lambda(t) = loop at s = ramp(t / T).
class ScheduledPath {
public:
    explicit ScheduledPath(const Schedule& sched);

    ControlPoint at(double t) const;
    double total_time() const { return total_time_; }

private:
    LoopParametrization param_;
    double total_time_;
    Ramp ramp_;
};

struct TransportReport {
    UnitaryMatrix transport;      // re-unitarized n x n overlaps <beta(0)|psi_alpha(T)>
    Matrix raw_overlaps;          // before re-unitarization
    std::vector<double> leakage;  // 1 - sum_beta |overlap|^2 per column
    double max_leakage = 0.0;
    double distance_to_holonomy = 0.0; // max-entry distance to holonomy(loop)
    double total_time = 0.0;
    int steps = 0;
    bool adiabatic = true; // max_leakage within the bound
};

// Propagates the n code eigenstates at the base point through
// i d psi/dt = H(lambda(t)) psi with the exponential midpoint rule and returns
// their final coordinates in the initial code frame. H is rank one, so every
// step exp(-i H dt) = 1 + (exp(-i eps0 dt) - 1)|v><v| is exact and unitary.
TransportReport adiabatic_transport(const HamiltonianFamily& f, const Schedule& sched,
                                    double leakage_bound = kDefaultLeakageBound,
                                    int holonomy_segments = 256);

// Full (n+1) x (n+1) propagator T exp(-i int H dt) by the exponential midpoint rule.
UnitaryMatrix continuous_propagator(const HamiltonianFamily& f, const Schedule& sched, int steps);

struct KickPlan {
    int intervals = 1; // N
    double delta_t = 0.0;
    std::vector<ControlPoint> lambdas; // lambda_0 .. lambda_N
};

// Samples the scheduled loop at t_i = i * T / N.
KickPlan make_kick_plan(const Schedule& sched, int intervals);

// prod_{i=0}^{N-1} U_i exp(-i H0 dt) U_i^dagger, later factors on the left,
// with U_i = frame_unitary(lambda_i).
UnitaryMatrix kick_evolution(const HamiltonianFamily& f, const KickPlan& plan);

enum class Relation { pass, marginal, violated };

std::string to_string(Relation r);

struct TimescaleEntry {
    std::string relation;
    double ratio = 0.0;     // larger side / smaller side
    double threshold = 0.0; // ratio needed
    Relation status = Relation::pass;
};

struct TimescaleReport {
    std::vector<TimescaleEntry> entries;
    bool ok = true; // every entry passes
};

// tau_k <= dt << 1/omega << tau_lambda with omega = eps0. "<=" needs ratio >= 1;
// each "<<" needs ratio above `separation`, exactly at it is marginal.
TimescaleReport timescale_check(const KickPlan& plan, double tau_k, double tau_lambda, double epsilon0 = 1.0,
                                double separation = 10.0);

struct ProgramVerification {
    UnitaryMatrix transport;   // product of per-step adiabatic transports
    UnitaryMatrix closed_form; // evaluate_closed_form(program)
    double distance = 0.0;     // max-entry distance transport vs closed form
    std::vector<double> leakage; // 1 - squared norm of each column of the raw product
    double max_leakage = 0.0;
    double total_time = 0.0;   // per loop
    int steps = 0;             // per loop
    int loops = 0;
};

// Runs every realized loop of the program through adiabatic_transport and
// composes the results in time order.
ProgramVerification verify_program(const HamiltonianFamily& f, const GateProgram& program,
                                   double total_time = kDefaultAdiabaticTime, int steps = 0);

} // namespace hqc
