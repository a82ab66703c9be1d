#include "hqc/linalg.hpp"

#include <cmath>

namespace hqc::linalg {

Matrix expm_antihermitian(const Matrix& g) {
    // G = -iH with H = iG hermitian, so exp(G) = V exp(-i lambda) V^dagger.
    const Matrix h = kI * g;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (h + h.adjoint()));
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    Vector phases(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        phases(k) = std::polar(1.0, -lambda(k));
    }
    const Matrix& v = eig.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

Matrix expm_hermitian_propagator(const Matrix& h, double dt) {
    return expm_antihermitian(-kI * dt * h);
}

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& m) {
    return max_abs(m.adjoint() * m - Matrix::Identity(m.cols(), m.cols()));
}

double antihermitian_defect(const Matrix& m) {
    return max_abs(m + m.adjoint());
}

Matrix polar_unitary(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

double operator_norm(const Matrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

PhaseAlignment distance_up_to_phase(const Matrix& a, const Matrix& b) {
    const Complex overlap = (b.adjoint() * a).trace();
    const double phase = std::abs(overlap) > 0.0 ? std::arg(overlap) : 0.0;
    return {max_abs(a - std::polar(1.0, phase) * b), phase};
}

double phase_insensitive_fidelity(const Matrix& a, const Matrix& b) {
    return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix z(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace hqc::linalg
