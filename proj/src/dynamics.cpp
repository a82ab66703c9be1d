#include "hqc/dynamics.hpp"

#include "hqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqc {

Ramp parse_ramp(std::string_view text) {
    if (text == "smoothstep") return Ramp::smoothstep;
    if (text == "linear") return Ramp::linear;
    throw InvalidArgument("unknown ramp '" + std::string(text) + "'");
}

std::string to_string(Ramp r) {
    return r == Ramp::smoothstep ? "smoothstep" : "linear";
}

double ramp_value(Ramp r, double x) {
    x = std::clamp(x, 0.0, 1.0);
    if (r == Ramp::linear) {
        return x;
    }
    return x * x * (3.0 - 2.0 * x);
}

int effective_steps(const HamiltonianFamily& f, const Schedule& sched) {
    if (!(sched.total_time > 0.0) || !std::isfinite(sched.total_time)) {
        throw InvalidArgument("total time must be positive and finite");
    }
    if (sched.steps < 0) {
        throw InvalidArgument("steps must be non-negative");
    }
    const double needed = std::ceil(std::abs(f.epsilon0) * sched.total_time / kMaxPhaseStep);
    return std::max({sched.steps, kMinScheduleSteps, static_cast<int>(needed)});
}

namespace {

double euclidean(const ChartDelta& d) {
    double sum = 0.0;
    for (double x : d.theta) sum += x * x;
    for (double x : d.phi) sum += x * x;
    return std::sqrt(sum);
}

} // namespace

LoopParametrization::LoopParametrization(const LoopPath& loop) : points_(loop.points()) {
    cumulative_.reserve(points_.size());
    cumulative_.push_back(0.0);
    for (std::size_t k = 1; k < points_.size(); ++k) {
        cumulative_.push_back(cumulative_.back() + euclidean(chart_difference(points_[k - 1], points_[k])));
    }
}

ControlPoint LoopParametrization::at(double s) const {
    const double total = length();
    if (total == 0.0) {
        return points_.front();
    }
    const double target = std::clamp(s, 0.0, 1.0) * total;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) {
        return points_.back();
    }
    const std::size_t k = static_cast<std::size_t>(it - cumulative_.begin());
    const double edge = cumulative_[k] - cumulative_[k - 1];
    const double t = edge > 0.0 ? (target - cumulative_[k - 1]) / edge : 0.0;
    return chart_advance(points_[k - 1], chart_difference(points_[k - 1], points_[k]), t);
}

ScheduledPath::ScheduledPath(const Schedule& sched)
    : param_(sched.loop), total_time_(sched.total_time), ramp_(sched.ramp) {
    if (!(total_time_ > 0.0) || !std::isfinite(total_time_)) {
        throw InvalidArgument("total time must be positive and finite");
    }
}

ControlPoint ScheduledPath::at(double t) const {
    return param_.at(ramp_value(ramp_, t / total_time_));
}

namespace {

// psi <- (1 + (exp(-i eps0 dt) - 1)|v><v|) psi for every column of psi.
void apply_rank_one_step(Matrix& psi, const Vector& v, Complex factor) {
    const Eigen::RowVectorXcd overlaps = v.adjoint() * psi;
    psi.noalias() += (factor * v) * overlaps;
}

Matrix propagate(const HamiltonianFamily& f, const ScheduledPath& path, int steps, Matrix psi) {
    const int n = psi.rows() - 1;
    const double dt = path.total_time() / steps;
    const Complex factor = std::polar(1.0, -f.epsilon0 * dt) - 1.0;
    for (int k = 0; k < steps; ++k) {
        const ControlPoint mid = path.at((k + 0.5) * dt);
        apply_rank_one_step(psi, eigenstate(mid, n + 1), factor);
    }
    if (!linalg::all_finite(psi)) {
        throw NumericalError("non-finite state during propagation");
    }
    return psi;
}

} // namespace

TransportReport adiabatic_transport(const HamiltonianFamily& f, const Schedule& sched, double leakage_bound,
                                    int holonomy_segments) {
    const int n = sched.loop.n();
    if (f.n != n) {
        throw InvalidArgument("Hamiltonian family and loop disagree on n");
    }
    const int steps = effective_steps(f, sched);
    const ScheduledPath path(sched);
    const Matrix code = eigenframe(sched.loop.base_point()).leftCols(n);
    const Matrix psi = propagate(f, path, steps, code);
    Matrix overlaps = code.adjoint() * psi;

    std::vector<double> leakage(n);
    double max_leakage = 0.0;
    for (int a = 0; a < n; ++a) {
        leakage[a] = std::max(0.0, 1.0 - overlaps.col(a).squaredNorm());
        max_leakage = std::max(max_leakage, leakage[a]);
    }
    UnitaryMatrix transport = UnitaryMatrix::nearest(overlaps);
    const double distance =
        linalg::max_abs(transport.matrix() - holonomy(sched.loop, holonomy_segments).matrix());
    return {std::move(transport), std::move(overlaps), std::move(leakage), max_leakage, distance,
            sched.total_time, steps, max_leakage <= leakage_bound};
}

UnitaryMatrix continuous_propagator(const HamiltonianFamily& f, const Schedule& sched, int steps) {
    if (steps < 1) {
        throw InvalidArgument("steps must be positive");
    }
    const int n = sched.loop.n();
    const ScheduledPath path(sched);
    return UnitaryMatrix::project(propagate(f, path, steps, Matrix::Identity(n + 1, n + 1)));
}

KickPlan make_kick_plan(const Schedule& sched, int intervals) {
    if (intervals < 1) {
        throw InvalidArgument("kick plan needs at least one interval");
    }
    const ScheduledPath path(sched);
    KickPlan plan;
    plan.intervals = intervals;
    plan.delta_t = sched.total_time / intervals;
    plan.lambdas.reserve(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        plan.lambdas.push_back(path.at(i * plan.delta_t));
    }
    return plan;
}

UnitaryMatrix kick_evolution(const HamiltonianFamily& f, const KickPlan& plan) {
    if (plan.intervals < 1 || static_cast<int>(plan.lambdas.size()) != plan.intervals + 1) {
        throw InvalidArgument("kick plan needs N >= 1 and N + 1 control points");
    }
    const int n = plan.lambdas.front().n();
    if (f.n != n) {
        throw InvalidArgument("Hamiltonian family and kick plan disagree on n");
    }
    Matrix free = Matrix::Identity(n + 1, n + 1);
    free(n, n) = std::polar(1.0, -f.epsilon0 * plan.delta_t);
    Matrix product = Matrix::Identity(n + 1, n + 1);
    for (int i = 0; i < plan.intervals; ++i) {
        const Matrix u = frame_unitary(plan.lambdas[i]);
        product = u * free * u.adjoint() * product;
    }
    return UnitaryMatrix::project(product);
}

std::string to_string(Relation r) {
    switch (r) {
    case Relation::pass: return "pass";
    case Relation::marginal: return "marginal";
    case Relation::violated: return "violated";
    }
    return "?";
}

namespace {

Relation classify(double ratio, double threshold, bool strict) {
    const double scale = std::max(std::abs(ratio), std::abs(threshold));
    const bool equal = std::abs(ratio - threshold) <= 1e-12 * scale;
    if (equal) {
        return strict ? Relation::marginal : Relation::pass;
    }
    return ratio > threshold ? Relation::pass : Relation::violated;
}

} // namespace

TimescaleReport timescale_check(const KickPlan& plan, double tau_k, double tau_lambda, double epsilon0,
                                double separation) {
    if (!(tau_k > 0.0) || !(tau_lambda > 0.0) || !(epsilon0 > 0.0) || !(separation > 0.0) ||
        !(plan.delta_t > 0.0)) {
        throw InvalidArgument("time scales must be positive");
    }
    const double period = 1.0 / epsilon0;
    TimescaleReport report;
    report.entries.push_back({"tau_k <= dt", plan.delta_t / tau_k, 1.0, classify(plan.delta_t / tau_k, 1.0, false)});
    report.entries.push_back(
        {"dt << 1/omega", period / plan.delta_t, separation, classify(period / plan.delta_t, separation, true)});
    report.entries.push_back(
        {"1/omega << tau_lambda", tau_lambda / period, separation, classify(tau_lambda / period, separation, true)});
    for (const auto& e : report.entries) {
        report.ok = report.ok && e.status == Relation::pass;
    }
    return report;
}

ProgramVerification verify_program(const HamiltonianFamily& f, const GateProgram& program, double total_time,
                                   int steps) {
    if (f.n != program.n) {
        throw InvalidArgument("Hamiltonian family and program disagree on n");
    }
    Matrix product = Matrix::Identity(program.n, program.n);
    int loops = 0;
    int used_steps = 0;
    for (const auto& step : program.steps) {
        validate_step(step, program.n);
        for (const auto& piece : split_step(step)) {
            Schedule sched{realize_step_as_loop(piece, program.n), total_time, Ramp::smoothstep, steps};
            const TransportReport r = adiabatic_transport(f, sched, kDefaultLeakageBound, 16);
            product = r.raw_overlaps * product;
            used_steps = r.steps;
            ++loops;
        }
    }
    std::vector<double> leakage(program.n);
    double max_leakage = 0.0;
    for (int a = 0; a < program.n; ++a) {
        leakage[a] = std::max(0.0, 1.0 - product.col(a).squaredNorm());
        max_leakage = std::max(max_leakage, leakage[a]);
    }
    UnitaryMatrix transport = UnitaryMatrix::nearest(product);
    UnitaryMatrix closed = evaluate_closed_form(program);
    const double distance = linalg::max_abs(transport.matrix() - closed.matrix());
    return {std::move(transport), std::move(closed), distance, std::move(leakage), max_leakage, total_time, used_steps, loops};
}

} // namespace hqc
