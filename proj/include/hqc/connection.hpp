#pragma once

// Wilczek-Zee connection A^mu_{row, col} = <psi^row | d/d lambda_mu | psi^col>
// over the n code eigenstates, evaluated from closed formulas or by central
// differences of the closed-form eigenframe.

#include "hqc/cpn_model.hpp"

#include <vector>

namespace hqc {

struct ConnectionValue {
    int n = 0;
    std::vector<Matrix> a_theta; // a_theta[beta - 1] = A^{theta_beta}
    std::vector<Matrix> a_phi;   // a_phi[beta - 1]   = A^{phi_beta}
    // Largest |M + M^dagger| entry before anti-hermitization (numeric path only).
    double symmetrization_defect = 0.0;

    const Matrix& theta(int beta) const { return a_theta.at(beta - 1); }
    const Matrix& phi(int beta) const { return a_phi.at(beta - 1); }
    const Matrix& component(Coord c) const { return c.kind == CoordKind::theta ? theta(c.level) : phi(c.level); }

    // sum_beta A^{theta_beta} dtheta_beta + A^{phi_beta} dphi_beta
    Matrix contract(const ChartDelta& d) const;
};

ConnectionValue connection_analytic(const ControlPoint& p);

inline constexpr double kDefaultDifferenceStep = 1e-5;

// Throws InvalidDiscretization when theta +- step would leave [0, pi/2].
ConnectionValue connection_numeric(const ControlPoint& p, double step = kDefaultDifferenceStep);

// Largest entry-wise difference over all 2n components.
double connection_distance(const ConnectionValue& a, const ConnectionValue& b);

} // namespace hqc
