#include "hqc/unitary.hpp"

#include "hqc/linalg.hpp"

#include <sstream>

namespace hqc {

namespace {

void require_square_finite(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidArgument("unitary matrix must be square and non-empty");
    }
    if (!linalg::all_finite(m)) {
        throw NumericalError("non-finite entries in candidate unitary");
    }
}

} // namespace

UnitaryMatrix UnitaryMatrix::certify(Matrix m) {
    require_square_finite(m);
    const double defect = linalg::unitarity_defect(m);
    if (defect <= kAcceptDefect) {
        return UnitaryMatrix(std::move(m), defect, false);
    }
    if (defect <= kRejectDefect) {
        return UnitaryMatrix(linalg::polar_unitary(m), defect, true);
    }
    std::ostringstream msg;
    msg << "unitarity defect " << defect << " exceeds bound " << kRejectDefect;
    throw NumericalError(msg.str());
}

UnitaryMatrix UnitaryMatrix::project(const Matrix& m) {
    require_square_finite(m);
    const double defect = linalg::unitarity_defect(m);
    if (defect > kRejectDefect) {
        std::ostringstream msg;
        msg << "unitarity defect " << defect << " exceeds bound " << kRejectDefect;
        throw NumericalError(msg.str());
    }
    return UnitaryMatrix(linalg::polar_unitary(m), defect, true);
}

UnitaryMatrix UnitaryMatrix::nearest(const Matrix& m) {
    require_square_finite(m);
    return UnitaryMatrix(linalg::polar_unitary(m), linalg::unitarity_defect(m), true);
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
    return UnitaryMatrix(Matrix::Identity(dim, dim), 0.0, false);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(matrix_.adjoint(), raw_defect_, reunitarized_);
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) {
        throw InvalidArgument("unitary product dimension mismatch");
    }
    return UnitaryMatrix::certify(a.matrix() * b.matrix());
}

} // namespace hqc
