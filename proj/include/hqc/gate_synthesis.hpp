#pragma once

// Primitive loop holonomies, their realization as chart rectangles, a
// compiler from target unitaries to loop programs, and the fixed CP^4
// two-qubit gate programs.
//
// Closed forms (P_b = |b><b|, K = |b><bb| - |bb><b|, X = |b><bb| + |bb><b|):
//   C1 on (theta_b, phi_b), other theta = 0            exp(-i P_b S)
//   C2 on (theta_b, phi_bb), theta_bb = pi/2, bb > b   exp(-i P_b S)
//   C3 on (theta_b, theta_bb), phi = 0                 exp(-K S)
//   C4 on (theta_b, theta_bb), phi_b = pi/2            exp(-i X S)
// with S the oriented area of loop.hpp. A C2 loop only moves the phase of
// level b; the constant A^{phi_bb}_{bb,bb} = -i integrates to zero.

#include "hqc/loop.hpp"
#include "hqc/unitary.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

struct GateStep {
    LoopFamily family = LoopFamily::C1;
    int beta = 1;
    std::optional<int> beta_bar;
    double area = 0.0;

    friend bool operator==(const GateStep&, const GateStep&) = default;
};

struct GateProgram {
    int n = 1;
    std::vector<GateStep> steps; // time order: steps.front() acts first

    friend bool operator==(const GateProgram&, const GateProgram&) = default;
};

// Throws InvalidArgument on out-of-range levels, a missing or equal beta_bar,
// or a C1 step carrying beta_bar.
void validate_step(const GateStep& step, int n);

// True for C2 with beta_bar < beta: both connection components vanish there.
bool is_trivial_configuration(const GateStep& step);

// Closed-form matrix of one step (n x n). Trivial configurations return the
// identity and append a warning when `warnings` is given.
UnitaryMatrix primitive_holonomy(const GateStep& step, int n, std::vector<std::string>* warnings = nullptr);

// Largest |area| a single rectangle of this family can enclose.
double step_capacity(LoopFamily family);

// Splits a step whose area exceeds the family capacity into equal pieces.
std::vector<GateStep> split_step(const GateStep& step);

// Frozen coordinates the family prescribes (plane coordinates at their start values).
ControlPoint family_base_point(const GateStep& step, int n);

// Rectangle in the family's plane whose enclosed_area equals step.area.
// Throws InvalidArgument when |area| exceeds step_capacity.
LoopPath realize_step_as_loop(const GateStep& step, int n);

UnitaryMatrix evaluate_closed_form(const GateProgram& program, std::vector<std::string>* warnings = nullptr);

// Integrates every step's realized loop with the holonomy engine. Each loop is
// based at its family's frozen point; the code frame is continuous between
// those points (the connection vanishes on the connecting paths), so frame
// coordinates compose directly.
UnitaryMatrix evaluate_integrated(const GateProgram& program, int segments_per_edge);

struct Compilation {
    GateProgram program;
    double distance = 0.0;       // max-entry distance to the target after phase alignment
    double residual_phase = 0.0; // global phase the program misses
};

// Factorizes a 2x2 unitary on levels {beta, beta_bar} (beta < beta_bar <= n)
// as D1 R D2: a C3 rotation between diagonal phases. Phases on beta use C2
// loops, phases on beta_bar use C1 loops. At most 4 steps; zero-area steps are
// dropped.
Compilation compile_u2_block(const Matrix& target, int beta, int beta_bar, int n);

// Givens elimination of an n x n unitary into two-level blocks, each compiled
// by compile_u2_block, followed by C1/C2 phases for the remaining diagonal.
Compilation compile_unitary(const Matrix& target);

enum class NamedGate { XOR, CROT, SWAP, PHASE1, PHASE2, UPH1 };

NamedGate parse_named_gate(std::string_view name);
std::string to_string(NamedGate gate);

// Areas of the single-qubit phase-rotation construction.
struct PhaseRotationAreas {
    double sigma1 = kPi / 8.0;
    double sigma3 = kPi / 4.0;
};

// Loop programs on CP^4 in the basis |00>,|01>,|10>,|11> <-> levels 1..4.
//   UPH1   (U1 U2) U3 (U1 U2)^-1, U1 = C1(theta1,phi1), U2 = C2(theta1,phi2), U3 = C3(theta1,theta2)
//   PHASE2 UPH1 followed by the same construction on levels 3,4  (= 1 (x) Uq)
//   PHASE1 SWAP . PHASE2 . SWAP                                    (= Uq (x) 1)
//   CROT   C1(theta4,phi4) twice at pi/2
//   XOR    C2(theta1,phi3), C2(theta2,phi4) at pi/2, then C4(theta3,theta4) at pi/2
//   SWAP   C2(theta1,phi2), C1(theta4,phi4) at pi/2, then C4(theta2,theta3) at pi/2
GateProgram two_qubit_gate(NamedGate gate, const PhaseRotationAreas& areas = {});

// The textbook 4x4 matrix each program must reproduce up to global phase.
Matrix standard_gate(NamedGate gate, const PhaseRotationAreas& areas = {});

// 2x2 rotation produced by the phase-rotation construction.
Matrix phase_rotation_block(const PhaseRotationAreas& areas);

} // namespace hqc
