#include "qtrap/single_qubit.hpp"

#include <cmath>

namespace qtrap {

QubitInitial QubitInitial::pure(cplx alpha, cplx beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
        throw DomainError("qubit initial state: |alpha|^2 + |beta|^2 must equal 1");
    QubitInitial q;
    const Eigen::Vector2cd psi(alpha, beta);
    q.rho = psi * psi.adjoint();
    q.alpha = alpha;
    q.beta = beta;
    return q;
}

QubitInitial QubitInitial::mixed(const Eigen::Matrix2cd& rho) {
    const DensityCheck c = check_density(rho);
    if (!c.ok(1e-12, 1e-12, 1e-12))
        throw DomainError("qubit initial state: matrix must be Hermitian, PSD and of trace 1");
    QubitInitial q;
    q.rho = rho;
    return q;
}

QubitTrajectory evolve(const QubitInitial& init, const AmplitudeTrajectory& traj) {
    const std::size_t n = traj.grid.size();
    QubitTrajectory out{traj.grid, {}, Eigen::VectorXd(n), Eigen::VectorXd(n)};
    out.rho.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Matrix2cd r = evolve_qubit_density<double>(init.rho, traj.b[i]);
        out.rho.push_back(r);
        out.purity[i] = (r * r).trace().real();
        out.decoherence[i] = std::abs(traj.b[i]);
    }
    return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> markovian_closed_forms(double alpha_abs,
                                                                   double gamma0,
                                                                   const TimeGrid& grid) {
    if (!(gamma0 >= 0.0)) throw DomainError("markovian_closed_forms: gamma0 must be >= 0");
    const std::size_t n = grid.size();
    Eigen::VectorXd p(n), c(n);
    const double a4 = std::pow(alpha_abs, 4);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(-gamma0 * grid.time(i));
        p[i] = 2.0 * a4 * e * (e - 1.0) + 1.0;
        c[i] = std::exp(-0.5 * gamma0 * grid.time(i));
    }
    return {p, c};
}

} // namespace qtrap
