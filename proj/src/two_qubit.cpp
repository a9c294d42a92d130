#include "qtrap/two_qubit.hpp"

#include <algorithm>
#include <cmath>

namespace qtrap {

PairInitial PairInitial::pure(cplx alpha, cplx beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
        throw DomainError("pair initial state: |alpha|^2 + |beta|^2 must equal 1");
    PairInitial p;
    Eigen::Vector4cd psi(beta, 0.0, 0.0, alpha);
    p.rho = psi * psi.adjoint();
    p.alpha = alpha;
    p.beta = beta;
    return p;
}

PairInitial PairInitial::mixed(const Eigen::Matrix4cd& rho) {
    const DensityCheck c = check_density(rho);
    if (!c.ok(1e-12, 1e-12, 1e-12))
        throw DomainError("pair initial state: matrix must be Hermitian, PSD and of trace 1");
    PairInitial p;
    p.rho = rho;
    return p;
}

PairTrajectory evolve_pair(const PairInitial& init, const AmplitudeTrajectory& traj) {
    const std::size_t n = traj.grid.size();
    PairTrajectory out{traj.grid, {}, Eigen::VectorXd(n), {}};
    out.rho.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.rho.push_back(evolve_pair_density<double>(init.rho, traj.b[i]));
        out.concurrence[i] = concurrence_wootters(out.rho.back());
    }
    out.events = detect_events(out.concurrence, traj.grid);
    return out;
}

double concurrence_closed_form(cplx alpha, cplx beta, cplx b) {
    const double p = std::norm(b);
    const double bb = std::abs(beta);
    return std::max(0.0, 2.0 * p * bb * (std::abs(alpha) - bb * (1.0 - p)));
}

std::optional<double> esd_death_time_markovian(cplx alpha, cplx beta, double gamma0) {
    if (!(gamma0 > 0.0)) throw DomainError("esd_death_time_markovian: gamma0 must be > 0");
    const double a = std::abs(alpha);
    const double b = std::abs(beta);
    if (!(a < b)) return std::nullopt;
    return -std::log(1.0 - a / b) / gamma0;
}

std::vector<EntanglementEvent> detect_events(const Eigen::Ref<const Eigen::VectorXd>& C,
                                             const TimeGrid& grid, std::size_t min_run) {
    std::vector<EntanglementEvent> events;
    const std::size_t n = static_cast<std::size_t>(C.size());
    const double dt = grid.dt;
    auto zero = [&](std::size_t i) { return C[static_cast<Eigen::Index>(i)] <= kZeroConcurrence; };
    auto at = [&](std::size_t i) { return C[static_cast<Eigen::Index>(i)]; };

    std::size_t i = 0;
    while (i < n) {
        if (!zero(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && zero(j)) ++j;
        const bool long_run = (j - i) >= min_run;
        if (long_run) {
            if (i > 0) {
                // extrapolate the falling edge from the last two positive samples
                double t = grid.time(i);
                if (i >= 2 && at(i - 2) > at(i - 1)) {
                    const double slope = (at(i - 2) - at(i - 1)) / dt;
                    t = std::clamp(grid.time(i - 1) + at(i - 1) / slope, grid.time(i - 1),
                                   grid.time(i));
                }
                events.push_back({EventKind::SuddenDeath, i, t});
            }
            if (j < n) {
                double t = grid.time(j - 1);
                if (j + 1 < n && at(j + 1) > at(j)) {
                    const double slope = (at(j + 1) - at(j)) / dt;
                    t = std::clamp(grid.time(j) - at(j) / slope, grid.time(j - 1), grid.time(j));
                }
                events.push_back({i == 0 ? EventKind::Birth : EventKind::Revival, j, t});
            }
        }
        i = j;
    }
    return events;
}

} // namespace qtrap
