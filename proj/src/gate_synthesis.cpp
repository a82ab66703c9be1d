#include "hqc/gate_synthesis.hpp"

#include "hqc/holonomy.hpp"
#include "hqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hqc {

namespace {

// Areas below this are dropped from compiled programs.
constexpr double kNegligibleArea = 1e-14;
// Off-diagonal magnitude treated as zero during Givens elimination.
constexpr double kEliminationTolerance = 1e-14;

void require_level(int level, int n, const char* what) {
    if (level < 1 || level > n) {
        std::ostringstream msg;
        msg << what << " = " << level << " outside 1.." << n;
        throw InvalidArgument(msg.str());
    }
}

// Area representative in (-pi, pi] for the phase families.
double reduce_phase_area(double area) {
    return wrap_difference(area);
}

void push_if_nonzero(std::vector<GateStep>& steps, GateStep step) {
    if (std::abs(step.area) > kNegligibleArea) {
        steps.push_back(step);
    }
}

} // namespace

void validate_step(const GateStep& step, int n) {
    if (n < 1) {
        throw InvalidArgument("program dimension n must be positive");
    }
    require_level(step.beta, n, "beta");
    if (!std::isfinite(step.area)) {
        throw InvalidArgument("step area must be finite");
    }
    if (step.family == LoopFamily::C1) {
        if (step.beta_bar && *step.beta_bar != step.beta) {
            throw InvalidArgument("C1 steps take no beta_bar");
        }
        return;
    }
    if (!step.beta_bar) {
        throw InvalidArgument(to_string(step.family) + " steps need beta_bar");
    }
    require_level(*step.beta_bar, n, "beta_bar");
    if (*step.beta_bar == step.beta) {
        throw InvalidArgument(to_string(step.family) + " needs beta_bar != beta");
    }
}

bool is_trivial_configuration(const GateStep& step) {
    return step.family == LoopFamily::C2 && step.beta_bar && *step.beta_bar < step.beta;
}

UnitaryMatrix primitive_holonomy(const GateStep& step, int n, std::vector<std::string>* warnings) {
    validate_step(step, n);
    if (is_trivial_configuration(step)) {
        if (warnings) {
            std::ostringstream msg;
            msg << "C2 with beta_bar=" << *step.beta_bar << " < beta=" << step.beta
                << " has vanishing connection; holonomy is the identity";
            warnings->push_back(msg.str());
        }
        return UnitaryMatrix::identity(n);
    }
    Matrix m = Matrix::Identity(n, n);
    const int b = step.beta - 1;
    const double c = std::cos(step.area);
    const double s = std::sin(step.area);
    switch (step.family) {
    case LoopFamily::C1:
    case LoopFamily::C2:
        m(b, b) = std::polar(1.0, -step.area);
        break;
    case LoopFamily::C3: {
        const int bb = *step.beta_bar - 1;
        m(b, b) = c;
        m(bb, bb) = c;
        m(b, bb) = -s;
        m(bb, b) = s;
        break;
    }
    case LoopFamily::C4: {
        const int bb = *step.beta_bar - 1;
        m(b, b) = c;
        m(bb, bb) = c;
        m(b, bb) = -kI * s;
        m(bb, b) = -kI * s;
        break;
    }
    }
    return UnitaryMatrix::certify(std::move(m));
}

double step_capacity(LoopFamily family) {
    switch (family) {
    case LoopFamily::C1:
    case LoopFamily::C2:
        return kTwoPi;
    case LoopFamily::C3:
    case LoopFamily::C4:
        return kHalfPi;
    }
    return 0.0;
}

std::vector<GateStep> split_step(const GateStep& step) {
    const double cap = step_capacity(step.family);
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(step.area) / cap - 1e-12)));
    GateStep piece = step;
    piece.area = step.area / pieces;
    return std::vector<GateStep>(pieces, piece);
}

ControlPoint family_base_point(const GateStep& step, int n) {
    validate_step(step, n);
    ControlPoint base = ControlPoint::origin(n);
    if (step.family == LoopFamily::C2) {
        base = base.with(Coord::theta(*step.beta_bar), kHalfPi);
    } else if (step.family == LoopFamily::C4) {
        base = base.with(Coord::phi(step.beta), kHalfPi);
    }
    return base;
}

LoopPath realize_step_as_loop(const GateStep& step, int n) {
    const ControlPoint base = family_base_point(step, n);
    const PlaneTag plane = family_plane(step.family, step.beta, step.beta_bar);
    const double magnitude = std::abs(step.area);
    if (magnitude > step_capacity(step.family) * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "area " << step.area << " exceeds the single-loop capacity " << step_capacity(step.family)
            << " of " << to_string(step.family) << "; split the step";
        throw InvalidArgument(msg.str());
    }
    if (magnitude == 0.0) {
        return LoopPath::degenerate(base, plane);
    }
    switch (step.family) {
    case LoopFamily::C1:
    case LoopFamily::C2: {
        // Oriented line integral sin^2(x1) * width; only the x = x1 edge contributes.
        double width = kHalfPi;
        double x1 = kHalfPi;
        if (magnitude <= width) {
            x1 = std::asin(std::min(1.0, std::sqrt(magnitude / width)));
        } else {
            width = magnitude;
        }
        const double sign = step.family == LoopFamily::C1 ? -1.0 : 1.0;
        return rectangle_loop(base, plane, 0.0, x1, 0.0, width, sign * step.area > 0.0);
    }
    case LoopFamily::C3:
    case LoopFamily::C4: {
        const double angle = std::asin(std::min(1.0, magnitude / kHalfPi));
        const bool ccw = step.area > 0.0;
        if (step.beta < *step.beta_bar) {
            return rectangle_loop(base, plane, 0.0, angle, 0.0, kHalfPi, ccw);
        }
        return rectangle_loop(base, plane, 0.0, kHalfPi, 0.0, angle, ccw);
    }
    }
    throw InvalidArgument("unknown family");
}

UnitaryMatrix evaluate_closed_form(const GateProgram& program, std::vector<std::string>* warnings) {
    Matrix total = Matrix::Identity(program.n, program.n);
    for (const auto& step : program.steps) {
        total = primitive_holonomy(step, program.n, warnings).matrix() * total;
    }
    return UnitaryMatrix::certify(std::move(total));
}

UnitaryMatrix evaluate_integrated(const GateProgram& program, int segments_per_edge) {
    Matrix total = Matrix::Identity(program.n, program.n);
    for (const auto& step : program.steps) {
        validate_step(step, program.n);
        for (const auto& piece : split_step(step)) {
            const LoopPath loop = realize_step_as_loop(piece, program.n);
            total = holonomy(loop, segments_per_edge).matrix() * total;
        }
    }
    return UnitaryMatrix::certify(std::move(total));
}

Compilation compile_u2_block(const Matrix& target, int beta, int beta_bar, int n) {
    if (target.rows() != 2 || target.cols() != 2) {
        throw InvalidArgument("compile_u2_block expects a 2x2 target");
    }
    require_level(beta, n, "beta");
    require_level(beta_bar, n, "beta_bar");
    if (!(beta < beta_bar)) {
        throw InvalidArgument("compile_u2_block needs beta < beta_bar");
    }
    const Matrix v = UnitaryMatrix::certify(target).matrix();

    // v = diag(e^{i a1}, e^{i a2}) R(t) diag(e^{i g}, 1), R(t) = [[cos t, -sin t], [sin t, cos t]].
    const Complex p = v(0, 0);
    const Complex q = v(0, 1);
    const Complex r = v(1, 0);
    const Complex s = v(1, 1);
    const double t = std::atan2(std::abs(q), std::abs(p));
    double a1 = 0.0;
    double a2 = 0.0;
    double g = 0.0;
    if (std::abs(q) < kEliminationTolerance) {
        a1 = std::arg(p);
        a2 = std::arg(s);
    } else if (std::abs(p) < kEliminationTolerance) {
        a1 = std::arg(-q);
        a2 = std::arg(r);
    } else {
        a1 = std::arg(-q);
        a2 = std::arg(s);
        g = std::arg(p) - a1;
    }

    GateProgram program{n, {}};
    // Phase exp(i x) on a level is a loop of area -x.
    push_if_nonzero(program.steps, {LoopFamily::C2, beta, beta_bar, reduce_phase_area(-g)});
    push_if_nonzero(program.steps, {LoopFamily::C3, beta, beta_bar, t});
    push_if_nonzero(program.steps, {LoopFamily::C2, beta, beta_bar, reduce_phase_area(-a1)});
    push_if_nonzero(program.steps, {LoopFamily::C1, beta_bar, std::nullopt, reduce_phase_area(-a2)});

    Matrix embedded = Matrix::Identity(n, n);
    embedded(beta - 1, beta - 1) = v(0, 0);
    embedded(beta - 1, beta_bar - 1) = v(0, 1);
    embedded(beta_bar - 1, beta - 1) = v(1, 0);
    embedded(beta_bar - 1, beta_bar - 1) = v(1, 1);
    const auto aligned = linalg::distance_up_to_phase(embedded, evaluate_closed_form(program).matrix());
    return {std::move(program), aligned.distance, aligned.phase};
}

Compilation compile_unitary(const Matrix& target) {
    const Matrix u = UnitaryMatrix::certify(target).matrix();
    const int n = static_cast<int>(u.rows());

    struct TwoLevel {
        int row_a;
        int row_b;
        Matrix g; // acts on rows (row_a, row_b)
    };
    std::vector<TwoLevel> eliminations;
    Matrix w = u;
    for (int c = 0; c + 1 < n; ++c) {
        for (int r = c + 1; r < n; ++r) {
            const Complex b = w(r, c);
            if (std::abs(b) < kEliminationTolerance) {
                continue;
            }
            const Complex a = w(c, c);
            const double nu = std::hypot(std::abs(a), std::abs(b));
            Matrix g(2, 2);
            g << std::conj(a) / nu, std::conj(b) / nu, -b / nu, a / nu;
            const Eigen::RowVectorXcd row_c = w.row(c);
            const Eigen::RowVectorXcd row_r = w.row(r);
            w.row(c) = g(0, 0) * row_c + g(0, 1) * row_r;
            w.row(r) = g(1, 0) * row_c + g(1, 1) * row_r;
            w(r, c) = 0.0;
            eliminations.push_back({c, r, g});
        }
    }

    // u = G_1^dagger ... G_k^dagger D; D acts first, then G_k^dagger, ..., G_1^dagger.
    GateProgram program{n, {}};
    const double global = std::arg(w(n - 1, n - 1));
    for (int j = 0; j + 1 < n; ++j) {
        const double phase = std::arg(w(j, j)) - global;
        push_if_nonzero(program.steps, {LoopFamily::C1, j + 1, std::nullopt, reduce_phase_area(-phase)});
    }
    for (auto it = eliminations.rbegin(); it != eliminations.rend(); ++it) {
        const Compilation block = compile_u2_block(it->g.adjoint(), it->row_a + 1, it->row_b + 1, n);
        program.steps.insert(program.steps.end(), block.program.steps.begin(), block.program.steps.end());
    }

    const auto aligned = linalg::distance_up_to_phase(u, evaluate_closed_form(program).matrix());
    return {std::move(program), aligned.distance, aligned.phase};
}

NamedGate parse_named_gate(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (upper == "XOR" || upper == "CNOT") return NamedGate::XOR;
    if (upper == "CROT") return NamedGate::CROT;
    if (upper == "SWAP") return NamedGate::SWAP;
    if (upper == "PHASE1") return NamedGate::PHASE1;
    if (upper == "PHASE2") return NamedGate::PHASE2;
    if (upper == "UPH1") return NamedGate::UPH1;
    throw InvalidArgument("unknown gate name '" + std::string(name) + "'");
}

std::string to_string(NamedGate gate) {
    switch (gate) {
    case NamedGate::XOR: return "XOR";
    case NamedGate::CROT: return "CROT";
    case NamedGate::SWAP: return "SWAP";
    case NamedGate::PHASE1: return "PHASE1";
    case NamedGate::PHASE2: return "PHASE2";
    case NamedGate::UPH1: return "UPH1";
    }
    return "?";
}

namespace {

// (U1 U2) U3 (U1 U2)^-1 on levels {lo, lo + 1}.
std::vector<GateStep> phase_rotation_steps(int lo, const PhaseRotationAreas& areas) {
    const int hi = lo + 1;
    return {
        {LoopFamily::C1, lo, std::nullopt, -areas.sigma1},
        {LoopFamily::C2, lo, hi, -areas.sigma1},
        {LoopFamily::C3, lo, hi, areas.sigma3},
        {LoopFamily::C2, lo, hi, areas.sigma1},
        {LoopFamily::C1, lo, std::nullopt, areas.sigma1},
    };
}

std::vector<GateStep> swap_steps() {
    return {
        {LoopFamily::C2, 1, 2, kHalfPi},
        {LoopFamily::C1, 4, std::nullopt, kHalfPi},
        {LoopFamily::C4, 2, 3, kHalfPi},
    };
}

} // namespace

GateProgram two_qubit_gate(NamedGate gate, const PhaseRotationAreas& areas) {
    GateProgram program{4, {}};
    auto append = [&](const std::vector<GateStep>& more) {
        program.steps.insert(program.steps.end(), more.begin(), more.end());
    };
    switch (gate) {
    case NamedGate::UPH1:
        append(phase_rotation_steps(1, areas));
        break;
    case NamedGate::PHASE2:
        append(phase_rotation_steps(1, areas));
        append(phase_rotation_steps(3, areas));
        break;
    case NamedGate::PHASE1:
        append(swap_steps());
        append(phase_rotation_steps(1, areas));
        append(phase_rotation_steps(3, areas));
        append(swap_steps());
        break;
    case NamedGate::CROT:
        append({{LoopFamily::C1, 4, std::nullopt, kHalfPi}, {LoopFamily::C1, 4, std::nullopt, kHalfPi}});
        break;
    case NamedGate::XOR:
        append({
            {LoopFamily::C2, 1, 3, kHalfPi},
            {LoopFamily::C2, 2, 4, kHalfPi},
            {LoopFamily::C4, 3, 4, kHalfPi},
        });
        break;
    case NamedGate::SWAP:
        append(swap_steps());
        break;
    }
    return program;
}

Matrix phase_rotation_block(const PhaseRotationAreas& areas) {
    const double c = std::cos(areas.sigma3);
    const double s = std::sin(areas.sigma3);
    Matrix q(2, 2);
    q << c, -s * std::polar(1.0, -2.0 * areas.sigma1), s * std::polar(1.0, 2.0 * areas.sigma1), c;
    return q;
}

Matrix standard_gate(NamedGate gate, const PhaseRotationAreas& areas) {
    Matrix m = Matrix::Zero(4, 4);
    const Matrix i2 = Matrix::Identity(2, 2);
    switch (gate) {
    case NamedGate::XOR:
        m(0, 0) = m(1, 1) = 1.0;
        m(2, 3) = m(3, 2) = 1.0;
        break;
    case NamedGate::CROT:
        m = Matrix::Identity(4, 4);
        m(3, 3) = -1.0;
        break;
    case NamedGate::SWAP:
        m(0, 0) = m(3, 3) = 1.0;
        m(1, 2) = m(2, 1) = 1.0;
        break;
    case NamedGate::UPH1:
        m = Matrix::Identity(4, 4);
        m.topLeftCorner(2, 2) = phase_rotation_block(areas);
        break;
    case NamedGate::PHASE2:
        m = linalg::kronecker(i2, phase_rotation_block(areas));
        break;
    case NamedGate::PHASE1:
        m = linalg::kronecker(phase_rotation_block(areas), i2);
        break;
    }
    return m;
}

} // namespace hqc
