#include "hqc/multipartite.hpp"

#include "hqc/linalg.hpp"

#include <sstream>

namespace hqc {

AncillaSign parse_ancilla(std::string_view text) {
    if (text == "+" || text == "plus") return AncillaSign::plus;
    if (text == "-" || text == "minus") return AncillaSign::minus;
    throw InvalidArgument("ancilla sign must be + or -");
}

std::string to_string(AncillaSign s) {
    return s == AncillaSign::plus ? "+" : "-";
}

void Register::validate() const {
    if (n_qubits < kMinQubits || n_qubits > kMaxQubits) {
        std::ostringstream msg;
        msg << "register size " << n_qubits << " outside " << kMinQubits << ".." << kMaxQubits;
        throw InvalidArgument(msg.str());
    }
}

namespace {

int qubit_shift(const Register& reg, int q) {
    return reg.n_qubits - q + 1;
}

void check_pair(const Register& reg, int i, int j) {
    reg.validate();
    if (i < 1 || i > reg.n_qubits || j < 1 || j > reg.n_qubits || i == j) {
        std::ostringstream msg;
        msg << "qubit pair (" << i << ", " << j << ") invalid for " << reg.n_qubits << " qubits";
        throw InvalidArgument(msg.str());
    }
}

void check_gate(const Matrix& g) {
    if (g.rows() != 4 || g.cols() != 4) {
        throw InvalidArgument("local gates must be 4x4");
    }
    if (linalg::unitarity_defect(g) > UnitaryMatrix::kRejectDefect) {
        throw InvalidArgument("local gate is not unitary");
    }
}

} // namespace

Vector basis_state(const Register& reg, std::string_view bits) {
    reg.validate();
    if (static_cast<int>(bits.size()) != reg.n_qubits) {
        throw InvalidArgument("basis label needs one bit per qubit");
    }
    Eigen::Index index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw InvalidArgument("basis label may only contain 0 and 1");
        }
        index = (index << 1) | (ch == '1' ? 1 : 0);
    }
    index = (index << 1) | (reg.sign == AncillaSign::plus ? 1 : 0);
    Vector v = Vector::Zero(reg.dimension());
    v(index) = 1.0;
    return v;
}

void apply_local_gate(const Register& reg, int i, int j, const Matrix& g, Matrix& state) {
    check_pair(reg, i, j);
    check_gate(g);
    if (state.rows() != reg.dimension()) {
        throw InvalidArgument("state dimension does not match the register");
    }
    const Eigen::Index bit_i = Eigen::Index{1} << qubit_shift(reg, i);
    const Eigen::Index bit_j = Eigen::Index{1} << qubit_shift(reg, j);
    Eigen::Matrix<Complex, 4, Eigen::Dynamic> slice(4, state.cols());
    for (Eigen::Index base = 0; base < reg.dimension(); ++base) {
        if ((base & bit_i) || (base & bit_j)) {
            continue;
        }
        const Eigen::Index idx[4] = {base, base | bit_j, base | bit_i, base | bit_i | bit_j};
        for (int k = 0; k < 4; ++k) slice.row(k) = state.row(idx[k]);
        slice = g * slice;
        for (int k = 0; k < 4; ++k) state.row(idx[k]) = slice.row(k);
    }
}

Vector apply_local_gate(const Register& reg, int i, int j, const Matrix& g, const Vector& state) {
    Matrix m = state;
    apply_local_gate(reg, i, j, g, m);
    return m.col(0);
}

UnitaryMatrix embed_local_gate(const Register& reg, int i, int j, const Matrix& g) {
    Matrix m = Matrix::Identity(reg.dimension(), reg.dimension());
    apply_local_gate(reg, i, j, g, m);
    return UnitaryMatrix::certify(std::move(m));
}

CircuitGate named_circuit_gate(int i, int j, NamedGate name) {
    return {i, j, standard_gate(name), name};
}

Vector run_circuit(const Register& reg, const std::vector<CircuitGate>& circuit, Vector state) {
    Matrix m = state;
    for (const auto& gate : circuit) {
        apply_local_gate(reg, gate.i, gate.j, gate.gate, m);
    }
    return m.col(0);
}

Matrix circuit_unitary(int n_qubits, const std::vector<CircuitGate>& circuit) {
    // Run on the + code and read off the qubit block.
    const Register reg{n_qubits, AncillaSign::plus, 1.0};
    reg.validate();
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Matrix columns = Matrix::Zero(reg.dimension(), dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        columns((c << 1) | 1, c) = 1.0;
    }
    for (const auto& gate : circuit) {
        apply_local_gate(reg, gate.i, gate.j, gate.gate, columns);
    }
    Matrix u(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        u.row(r) = columns.row((r << 1) | 1);
    }
    return u;
}

CostReport gate_count(int n_qubits, const std::vector<CircuitGate>& circuit) {
    CostReport report;
    report.gates = static_cast<int>(circuit.size());
    report.monolithic_dimension = 1 << n_qubits;
    if (circuit.empty()) {
        return report;
    }
    for (const auto& gate : circuit) {
        const int count = gate.named ? static_cast<int>(two_qubit_gate(*gate.named).steps.size())
                                     : static_cast<int>(compile_unitary(gate.gate).program.steps.size());
        report.local_per_gate.push_back(count);
        report.local_total += count;
    }
    report.monolithic_total =
        static_cast<int>(compile_unitary(circuit_unitary(n_qubits, circuit)).program.steps.size());
    return report;
}

} // namespace hqc
