#pragma once

// Local 4x4 gates embedded on qubit pairs of an n-qubit register carrying one
// ancilla qubit that selects the code C+ or C-.
//
// Basis index: qubit 1 is the most significant bit, the ancilla is the least
// significant one with |-> = 0 and |+> = 1. A pair gate on (i, j) acts in the
// pair basis 2 a_i + a_j.

#include "hqc/gate_synthesis.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hqc {

enum class AncillaSign { minus, plus };

AncillaSign parse_ancilla(std::string_view text);
std::string to_string(AncillaSign s);

struct Register {
    int n_qubits = 2;
    AncillaSign sign = AncillaSign::plus;
    double epsilon = 1.0; // ancilla splitting, metadata only

    static constexpr int kMinQubits = 2;
    static constexpr int kMaxQubits = 6;

    // Throws InvalidArgument outside kMinQubits..kMaxQubits.
    void validate() const;
    Eigen::Index dimension() const { return Eigen::Index{2} << n_qubits; }
};

// |bits> (x) |sign>, bits given most significant (qubit 1) first, e.g. "101".
Vector basis_state(const Register& reg, std::string_view bits);

// Applies g to qubits (i, j) of every column of `state`, factor-wise.
void apply_local_gate(const Register& reg, int i, int j, const Matrix& g, Matrix& state);
Vector apply_local_gate(const Register& reg, int i, int j, const Matrix& g, const Vector& state);

// Dense operator of the embedded gate, assembled column by column with apply_local_gate.
UnitaryMatrix embed_local_gate(const Register& reg, int i, int j, const Matrix& g);

struct CircuitGate {
    int i = 1;
    int j = 2;
    Matrix gate;                    // 4x4 in the pair basis
    std::optional<NamedGate> named; // set when the gate has a fixed loop program
};

CircuitGate named_circuit_gate(int i, int j, NamedGate name);

Vector run_circuit(const Register& reg, const std::vector<CircuitGate>& circuit, Vector state);

// Unitary of the circuit on the qubits alone (dimension 2^n, no ancilla).
Matrix circuit_unitary(int n_qubits, const std::vector<CircuitGate>& circuit);

struct CostReport {
    int gates = 0;
    std::vector<int> local_per_gate;
    int local_total = 0;         // sum of per-gate program lengths
    int monolithic_total = 0;    // compile_unitary of the whole 2^n circuit unitary
    int monolithic_dimension = 0;
};

CostReport gate_count(int n_qubits, const std::vector<CircuitGate>& circuit);

} // namespace hqc
