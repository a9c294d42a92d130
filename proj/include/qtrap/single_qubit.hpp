#pragma once

#include "qtrap/amplitude.hpp"
#include "qtrap/linalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qtrap {

/// Qubit initial condition in the basis {|+>, |->}.
struct QubitInitial {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Identity() / 2.0;
    std::optional<cplx> alpha;  // set for pure alpha|+> + beta|->
    std::optional<cplx> beta;

    static QubitInitial pure(cplx alpha, cplx beta);
    static QubitInitial mixed(const Eigen::Matrix2cd& rho);
};

struct QubitTrajectory {
    TimeGrid grid;
    std::vector<Eigen::Matrix2cd> rho;
    Eigen::VectorXd purity;       // Tr rho^2
    Eigen::VectorXd decoherence;  // |rho_12(t)| / |rho_12(0)| = |b(t)|
};

/// rho_11 |b|^2, rho_12 b, 1 - rho_11 |b|^2.
template <typename Real>
Mat2<Real> evolve_qubit_density(const Mat2<Real>& rho0, const std::complex<Real>& b) {
    const Real p = std::norm(b);
    Mat2<Real> r;
    r(0, 0) = rho0(0, 0) * p;
    r(0, 1) = rho0(0, 1) * b;
    r(1, 0) = rho0(1, 0) * std::conj(b);
    r(1, 1) = Real(1) - rho0(0, 0) * p;
    return r;
}

/// 2|alpha|^4 |b|^2 (|b|^2 - 1) + 1.
inline double purity_closed_form(double alpha_abs, double abs_b2) {
    const double a2 = alpha_abs * alpha_abs;
    return 2.0 * a2 * a2 * abs_b2 * (abs_b2 - 1.0) + 1.0;
}

QubitTrajectory evolve(const QubitInitial& init, const AmplitudeTrajectory& traj);

/// Markovian purity and decoherence factor: |b|^2 = exp(-gamma0 t).
std::pair<Eigen::VectorXd, Eigen::VectorXd> markovian_closed_forms(double alpha_abs,
                                                                   double gamma0,
                                                                   const TimeGrid& grid);

} // namespace qtrap
