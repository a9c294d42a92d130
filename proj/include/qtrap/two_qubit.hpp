#pragma once

#include "qtrap/amplitude.hpp"
#include "qtrap/linalg.hpp"

#include <optional>
#include <vector>

namespace qtrap {

/// Pair initial condition in the basis {|++>, |+->, |-+>, |-->}.
struct PairInitial {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity() / 4.0;
    std::optional<cplx> alpha;  // set for pure alpha|--> + beta|++>
    std::optional<cplx> beta;

    static PairInitial pure(cplx alpha, cplx beta);
    static PairInitial mixed(const Eigen::Matrix4cd& rho);
};

enum class EventKind { SuddenDeath, Revival, Birth };

struct EntanglementEvent {
    EventKind kind;
    std::size_t index;  // first zero step (death) or first positive step (revival, birth)
    double time;        // interpolated crossing time
};

struct PairTrajectory {
    TimeGrid grid;
    std::vector<Eigen::Matrix4cd> rho;
    Eigen::VectorXd concurrence;
    std::vector<EntanglementEvent> events;
};

/// Element map of the pair density matrix under two identical local reservoirs, c0 = b.
template <typename Real>
Mat4<Real> evolve_pair_density(const Mat4<Real>& r0, const std::complex<Real>& b) {
    const Real p = std::norm(b);
    const Real q = Real(1) - p;
    Mat4<Real> r;
    r(0, 0) = r0(0, 0) * p * p;
    r(1, 1) = r0(1, 1) * p + r0(0, 0) * p * q;
    r(2, 2) = r0(2, 2) * p + r0(0, 0) * p * q;
    r(3, 3) = Real(1) + r0(0, 0) * p * p - p * (Real(2) * r0(0, 0) + r0(1, 1) + r0(2, 2));
    r(0, 1) = r0(0, 1) * p * b;
    r(0, 2) = r0(0, 2) * p * b;
    r(0, 3) = r0(0, 3) * b * b;
    r(1, 2) = r0(1, 2) * p;
    r(1, 3) = r0(1, 3) * b + r0(0, 2) * b * q;
    r(2, 3) = r0(2, 3) * b + r0(0, 1) * b * q;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < i; ++j) r(i, j) = std::conj(r(j, i));
    for (int i = 0; i < 4; ++i) r(i, i) = std::complex<Real>(r(i, i).real(), Real(0));
    return r;
}

PairTrajectory evolve_pair(const PairInitial& init, const AmplitudeTrajectory& traj);

/// max{0, 2|b|^2 |beta| (|alpha| - |beta|(1 - |b|^2))}.
double concurrence_closed_form(cplx alpha, cplx beta, cplx b);

/// Markovian death time -ln(1 - |alpha|/|beta|) / gamma0 when |alpha| < |beta|.
std::optional<double> esd_death_time_markovian(cplx alpha, cplx beta, double gamma0);

inline constexpr double kZeroConcurrence = 1e-12;
inline constexpr std::size_t kMinZeroRun = 3;

/// Deaths are entries into zero-runs of at least min_run steps that follow a positive
/// value; revivals are exits from such runs; births are exits from a leading zero-run.
std::vector<EntanglementEvent> detect_events(const Eigen::Ref<const Eigen::VectorXd>& C,
                                             const TimeGrid& grid,
                                             std::size_t min_run = kMinZeroRun);

} // namespace qtrap
