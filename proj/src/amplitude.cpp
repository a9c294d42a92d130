#include "qtrap/amplitude.hpp"

#include "qtrap/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qtrap {

TimeGrid TimeGrid::from_horizon(double t_max, double dt) {
    if (!(std::isfinite(t_max) && t_max > 0.0)) throw DomainError("grid: t_max must be > 0");
    if (!(std::isfinite(dt) && dt > 0.0)) throw DomainError("grid: dt must be > 0");
    const double steps = std::ceil(t_max / dt - 1e-9);
    TimeGrid g;
    g.n = static_cast<std::size_t>(std::max(steps, 2.0));
    g.dt = t_max / static_cast<double>(g.n);
    return g;
}

void TimeGrid::validate() const {
    if (!(std::isfinite(dt) && dt > 0.0)) throw DomainError("grid: dt must be > 0");
    if (n < 2) throw DomainError("grid: need at least 2 steps");
}

Eigen::VectorXcd solve_memory_equation(std::span<const cplx> f, double omega_0, double dt) {
    if (f.size() < 3) throw DomainError("solve_memory_equation: need at least 2 steps");
    const std::size_t N = f.size() - 1;

    // rotating frame: c = e^{i w0 t} b, kernel ft(x) = f(x) e^{i w0 x}
    std::vector<cplx> ft(N + 1);
    for (std::size_t j = 0; j <= N; ++j)
        ft[j] = f[j] * std::polar(1.0, omega_0 * dt * static_cast<double>(j));

    // K(t) = int_0^t ft, cumulative four-point cell rule
    std::vector<cplx> K(N + 1);
    K[0] = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        cplx cell;
        if (N < 3)
            cell = 0.5 * (ft[j] + ft[j + 1]);
        else if (j == 0)
            cell = (9.0 * ft[0] + 19.0 * ft[1] - 5.0 * ft[2] + ft[3]) / 24.0;
        else if (j == N - 1)
            cell = (ft[N - 3] - 5.0 * ft[N - 2] + 19.0 * ft[N - 1] + 9.0 * ft[N]) / 24.0;
        else
            cell = (-ft[j - 1] + 13.0 * ft[j] + 13.0 * ft[j + 1] - ft[j + 2]) / 24.0;
        K[j + 1] = K[j] + dt * cell;
    }

    // c(t) = 1 - int_0^t K(t - s) c(s) ds, trapezoid; explicit since K(0) = 0
    Eigen::VectorXcd k_rev(N + 1);
    for (std::size_t m = 0; m <= N; ++m) k_rev[N - m] = K[m];
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(N + 1);
    c[0] = 1.0;

    Eigen::VectorXcd b(N + 1);
    b[0] = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        cplx hist = 0.5 * K[n];
        if (n > 1) {
            const auto len = static_cast<Eigen::Index>(n - 1);
            const auto off = static_cast<Eigen::Index>(N - n + 1);
            hist += k_rev.segment(off, len).cwiseProduct(c.segment(1, len)).sum();
        }
        c[n] = 1.0 - dt * hist;
        b[n] = c[n] * std::polar(1.0, -omega_0 * dt * static_cast<double>(n));
        if (!(std::abs(c[n]) <= 1.0 + 1e-3)) {
            std::ostringstream os;
            os << "amplitude solver unstable at t = " << dt * static_cast<double>(n)
               << " (|b| = " << std::abs(c[n]) << "); reduce dt";
            throw NumericError(os.str(), std::abs(c[n]) - 1.0);
        }
    }
    return b;
}

AmplitudeTrajectory solve_exact(const SpectralModel& m, double omega_0, const TimeGrid& grid) {
    validate(m);
    grid.validate();
    if (!(std::isfinite(omega_0) && omega_0 > 0.0))
        throw DomainError("solve_exact: omega_0 must be finite and > 0");
    const std::vector<cplx> f = kernel_samples(m, grid.dt, grid.n);
    return {grid, solve_memory_equation(f, omega_0, grid.dt), m, omega_0};
}

MarkovianCoefficients markovian_coefficients(const SpectralModel& m, double omega_0) {
    validate(m);
    MarkovianCoefficients c;
    c.gamma0 = 2.0 * std::numbers::pi * density(m, omega_0);
    c.delta_omega = lamb_shift_markovian(m, omega_0);
    c.omega0_shifted = 2.0 * (omega_0 - c.delta_omega);
    return c;
}

AmplitudeTrajectory solve_markovian(const SpectralModel& m, double omega_0, const TimeGrid& grid) {
    grid.validate();
    const MarkovianCoefficients c = markovian_coefficients(m, omega_0);
    const cplx rate(0.5 * c.gamma0, omega_0 - c.delta_omega);
    Eigen::VectorXcd b(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) b[i] = std::exp(-rate * grid.time(i));
    b[0] = 1.0;
    return {grid, b, m, omega_0};
}

RateTrajectory rates_from_amplitude(const AmplitudeTrajectory& traj) {
    const auto& b = traj.b;
    const Eigen::Index n = b.size();
    const double dt = traj.grid.dt;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    RateTrajectory r{traj.grid, Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(b[i]) < kRateMaskThreshold) {
            r.gamma[i] = nan;
            r.omega_shift[i] = nan;
            continue;
        }
        cplx db;
        if (i == 0)
            db = (-3.0 * b[0] + 4.0 * b[1] - b[2]) / (2.0 * dt);
        else if (i == n - 1)
            db = (3.0 * b[n - 1] - 4.0 * b[n - 2] + b[n - 3]) / (2.0 * dt);
        else
            db = (b[i + 1] - b[i - 1]) / (2.0 * dt);
        const cplx ratio = db / b[i];
        r.gamma[i] = -2.0 * ratio.real();
        r.omega_shift[i] = -2.0 * ratio.imag();
    }
    return r;
}

SteadyState final_window(const Eigen::Ref<const Eigen::VectorXd>& series) {
    const Eigen::Index n = series.size();
    if (n == 0) throw DomainError("final_window: empty series");
    const Eigen::Index len = std::max<Eigen::Index>(1, n / 10);
    const auto w = series.tail(len);
    SteadyState s;
    s.value = w.mean();
    s.spread = w.maxCoeff() - w.minCoeff();
    s.converged = s.spread < kSteadySpreadLimit;
    return s;
}

SteadyState steady_state_magnitude(const AmplitudeTrajectory& traj) {
    const double unit = reference_frequency(traj.model, traj.omega_0);
    if (traj.grid.t_max() * unit < 50.0 - 1e-9) {
        std::ostringstream os;
        os << "steady_state_magnitude: horizon " << traj.grid.t_max()
           << " is shorter than 50 in the model's frequency unit";
        throw DomainError(os.str());
    }
    const Eigen::VectorXd mag = traj.b.cwiseAbs();
    return final_window(mag);
}

} // namespace qtrap
