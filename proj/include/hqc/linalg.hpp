#pragma once

#include "hqc/types.hpp"

#include <random>

namespace hqc::linalg {

// exp(G) for anti-hermitian G via the spectral decomposition of the hermitian iG.
Matrix expm_antihermitian(const Matrix& g);

// exp(-i H dt) for hermitian H.
Matrix expm_hermitian_propagator(const Matrix& h, double dt);

double max_abs(const Matrix& m);

// max |(M^dagger M - I)_ij|
double unitarity_defect(const Matrix& m);

// max |(M + M^dagger)_ij|
double antihermitian_defect(const Matrix& m);

// Closest unitary in Frobenius norm (polar factor W V^dagger of the SVD).
Matrix polar_unitary(const Matrix& m);

double operator_norm(const Matrix& m);

bool all_finite(const Matrix& m);

struct PhaseAlignment {
    double distance = 0.0; // max-entry distance between a and exp(i*phase) b
    double phase = 0.0;
};

// Aligns b to a with the global phase arg tr(b^dagger a) and reports the max-entry distance.
PhaseAlignment distance_up_to_phase(const Matrix& a, const Matrix& b);

// |tr(a^dagger b)| / dim, equal to 1 iff a and b agree up to global phase.
double phase_insensitive_fidelity(const Matrix& a, const Matrix& b);

// Haar-distributed unitary from the QR decomposition of a complex Ginibre matrix.
Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

Matrix kronecker(const Matrix& a, const Matrix& b);

} // namespace hqc::linalg
