#pragma once

#include "qtrap/spectral.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>

namespace qtrap {

/// Uniform grid t_i = i dt, i = 0..n, with n dt = t_max.
struct TimeGrid {
    double dt = 1e-3;
    std::size_t n = 2;

    /// n = ceil(t_max / dt); dt is then adjusted so that n dt = t_max exactly.
    static TimeGrid from_horizon(double t_max, double dt);

    double t_max() const { return dt * static_cast<double>(n); }
    double time(std::size_t i) const { return dt * static_cast<double>(i); }
    std::size_t size() const { return n + 1; }
    void validate() const;
    bool operator==(const TimeGrid&) const = default;
};

struct AmplitudeTrajectory {
    TimeGrid grid;
    Eigen::VectorXcd b;
    SpectralModel model;
    double omega_0 = 1.0;
};

/// gamma(t) = -2 Re[b'/b], omega_shift(t) = -2 Im[b'/b]; NaN where |b| < mask threshold.
struct RateTrajectory {
    TimeGrid grid;
    Eigen::VectorXd gamma;
    Eigen::VectorXd omega_shift;
    static bool masked(double v) { return std::isnan(v); }
};

struct MarkovianCoefficients {
    double gamma0 = 0.0;          // 2 pi J(omega_0)
    double omega0_shifted = 0.0;  // 2 (omega_0 - delta_omega)
    double delta_omega = 0.0;
};

struct SteadyState {
    double value = 0.0;
    double spread = 0.0;  // peak-to-peak over the window
    bool converged = false;
};

inline constexpr double kRateMaskThreshold = 1e-8;
inline constexpr double kSteadySpreadLimit = 0.02;

/// Solves b' + i w0 b = -int_0^t f(t - s) b(s) ds, b(0) = 1, from kernel samples f_j = f(j dt).
/// Throws NumericError if |b| exceeds 1 + 1e-3.
Eigen::VectorXcd solve_memory_equation(std::span<const cplx> f, double omega_0, double dt);

AmplitudeTrajectory solve_exact(const SpectralModel& m, double omega_0, const TimeGrid& grid);

AmplitudeTrajectory solve_markovian(const SpectralModel& m, double omega_0, const TimeGrid& grid);

MarkovianCoefficients markovian_coefficients(const SpectralModel& m, double omega_0);

RateTrajectory rates_from_amplitude(const AmplitudeTrajectory& traj);

/// Mean and peak-to-peak spread of a series over its final 10%.
SteadyState final_window(const Eigen::Ref<const Eigen::VectorXd>& series);

/// final_window of |b|; requires t_max >= 50 in the model's frequency unit.
SteadyState steady_state_magnitude(const AmplitudeTrajectory& traj);

} // namespace qtrap
