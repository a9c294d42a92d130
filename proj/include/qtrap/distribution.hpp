#pragma once

#include "qtrap/amplitude.hpp"
#include "qtrap/linalg.hpp"
#include "qtrap/two_qubit.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtrap {

/// Bipartitions of {q1, r1, q2, r2}: qubits q_i, collective reservoir modes r_i.
enum class Partition { q1q2, r1r2, q1r1, q2r2, q1r2, q2r1 };

inline constexpr std::array<Partition, 6> kPartitions{Partition::q1q2, Partition::r1r2,
                                                      Partition::q1r1, Partition::q2r2,
                                                      Partition::q1r2, Partition::q2r1};

std::string_view partition_name(Partition p);
Partition partition_from_name(std::string_view name);

using Vector16cd = Eigen::Matrix<cplx, 16, 1>;

/// alpha|-0-0> + beta (b|+0> + bt|-1>)(b|+0> + bt|-1>), bt = sqrt(1 - |b|^2),
/// indexed 8 q1 + 4 r1 + 2 q2 + r2 with (-, +) -> (0, 1) and (0~, 1~) -> (0, 1).
struct FourPartyState {
    cplx b;
    double btilde = 0.0;
    cplx alpha;
    cplx beta;
    Vector16cd psi;
};

FourPartyState assemble_state(cplx alpha, cplx beta, cplx b);

struct PartitionEntanglement {
    std::array<double, 6> q{};  // indexed like kPartitions
    std::array<double, 6> c{};  // max{0, q}
    std::optional<double> identity_residual;  // undefined for beta = 0

    double Q(Partition p) const { return q[static_cast<std::size_t>(p)]; }
    double C(Partition p) const { return c[static_cast<std::size_t>(p)]; }
};

PartitionEntanglement q_values(cplx alpha, cplx beta, cplx b);

/// Reduced 4x4 density matrix of a partition, indexed 2 x_first + x_second.
Eigen::Matrix4cd reduced_density(const FourPartyState& s, Partition p);

double partition_concurrence_via_trace(const FourPartyState& s, Partition p);

struct DistributionTrajectory {
    TimeGrid grid;
    std::vector<PartitionEntanglement> steps;
    std::optional<double> max_identity_residual;
};

DistributionTrajectory distribute(cplx alpha, cplx beta, const AmplitudeTrajectory& traj);

struct EsdEsbReport {
    double threshold = 0.0;  // |alpha| / sqrt(1 - |alpha|^2)
    bool satisfied = false;
    std::optional<double> t_prime;  // first t' with |b(t')|^2 < threshold
    std::optional<double> t;        // first t with 1 - |b(t)|^2 > threshold
    bool threshold_out_of_range = false;     // threshold >= 1
    bool min_abs_b2_at_least_half = false;   // then unsatisfiable for every alpha
    std::optional<bool> no_bound_state_rule;  // present without a bound state: alpha < 1/sqrt2
};

/// Checks whether |b(t')|^2 < |alpha| / sqrt(1 - |alpha|^2) < 1 - |b(t)|^2 for some t', t.
EsdEsbReport esd_esb_condition(double alpha_abs, const AmplitudeTrajectory& traj);

struct AlphaScanRow {
    double alpha = 0.0;
    SteadyState abs_b2;
    std::array<SteadyState, 6> steady;  // C_m over the final window, indexed like kPartitions
    std::vector<EntanglementEvent> q1q2_events;
    std::vector<EntanglementEvent> r1r2_events;
    bool converged = false;
};

struct AlphaScan {
    BoundStateReport bound;
    std::vector<AlphaScanRow> rows;
};

/// Steady partition concurrences for real alpha, beta = sqrt(1 - alpha^2), from one trajectory.
AlphaScan alpha_scan(const AmplitudeTrajectory& traj, std::span<const double> alphas);

AlphaScan alpha_scan(const SpectralModel& m, double omega_0, const TimeGrid& grid,
                     std::span<const double> alphas);

/// i-th of n evenly spaced points from lo to hi, rounded to 15 significant digits.
double linspace_point(double lo, double hi, std::size_t i, std::size_t n);

struct Axis {
    std::string parameter;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;
    bool log_scale = false;

    std::vector<double> values() const;
    void validate() const;
    bool operator==(const Axis&) const = default;
};

struct ScanConfig {
    Axis x;
    Axis y;
    double alpha = 0.7;
    bool operator==(const ScanConfig&) const = default;
};

struct ScanCell {
    double x = 0.0;
    double y = 0.0;
    BoundStateReport bound;
    SteadyState abs_b2;
    SteadyState c_q1q2;
    SteadyState c_r1r2;
    SteadyState c_q1r1;
    bool converged = false;
};

struct ScanGrid {
    ScanConfig config;
    std::vector<ScanCell> cells;  // x varies fastest
};

/// Steady observables over a two-parameter grid of models derived from `base`.
ScanGrid phase_diagram(const SpectralModel& base, double omega_0, const TimeGrid& grid,
                       const ScanConfig& scan, unsigned workers = 0);

} // namespace qtrap
