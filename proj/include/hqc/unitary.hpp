#pragma once

#include "hqc/types.hpp"

namespace hqc {

// Dense square matrix certified unitary at construction.
//
// Defects up to kAcceptDefect pass untouched. Between kAcceptDefect and
// kRejectDefect the matrix is projected back onto U(dim) by its polar factor and
// the raw defect is kept; anything worse is rejected with NumericalError.
class UnitaryMatrix {
public:
    static constexpr double kAcceptDefect = 1e-9;
    static constexpr double kRejectDefect = 1e-6;

    static UnitaryMatrix certify(Matrix m);

    // Always applies the polar projection, recording the defect of the input.
    static UnitaryMatrix project(const Matrix& m);

    // Polar factor of any square matrix, without the rejection bound. Used for
    // physical overlap matrices whose defect is leakage, not round-off.
    static UnitaryMatrix nearest(const Matrix& m);

    static UnitaryMatrix identity(Eigen::Index dim);

    const Matrix& matrix() const { return matrix_; }
    Eigen::Index dim() const { return matrix_.rows(); }
    double raw_defect() const { return raw_defect_; }
    bool reunitarized() const { return reunitarized_; }

    UnitaryMatrix adjoint() const;

    friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

private:
    UnitaryMatrix(Matrix m, double raw_defect, bool reunitarized)
        : matrix_(std::move(m)), raw_defect_(raw_defect), reunitarized_(reunitarized) {}

    Matrix matrix_;
    double raw_defect_ = 0.0;
    bool reunitarized_ = false;
};

} // namespace hqc
