#include "qtrap/distribution.hpp"

#include "qtrap/errors.hpp"
#include "qtrap/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qtrap {

namespace {

constexpr std::array<std::string_view, 6> kNames{"q1q2", "r1r2", "q1r1", "q2r2", "q1r2", "q2r1"};

// factor order in the 16-vector: q1, r1, q2, r2
std::pair<int, int> factors(Partition p) {
    switch (p) {
    case Partition::q1q2: return {0, 2};
    case Partition::r1r2: return {1, 3};
    case Partition::q1r1: return {0, 1};
    case Partition::q2r2: return {2, 3};
    case Partition::q1r2: return {0, 3};
    case Partition::q2r1: return {2, 1};
    }
    throw DomainError("unknown partition");
}

void require_normalized(cplx alpha, cplx beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
        throw DomainError("|alpha|^2 + |beta|^2 must equal 1");
}

double btilde_of(cplx b) {
    const double p = std::norm(b);
    if (p > 1.0 + 1e-12) throw DomainError("|b| must not exceed 1");
    return std::sqrt(std::max(0.0, 1.0 - p));
}

} // namespace

double linspace_point(double lo, double hi, std::size_t i, std::size_t n) {
    if (n == 1) return lo;
    const double v = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    // drop last-bit noise so grids read as clean decimals (0.4, not 0.39999999999999997)
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return i + 1 == n ? hi : std::strtod(buf, nullptr);
}

std::string_view partition_name(Partition p) { return kNames[static_cast<std::size_t>(p)]; }

Partition partition_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == name) return kPartitions[i];
    throw DomainError("unknown partition '" + std::string(name) + "'");
}

FourPartyState assemble_state(cplx alpha, cplx beta, cplx b) {
    require_normalized(alpha, beta);
    FourPartyState s;
    s.b = b;
    s.btilde = btilde_of(b);
    s.alpha = alpha;
    s.beta = beta;
    s.psi.setZero();
    s.psi[0] = alpha;                       // |- 0 - 0>
    s.psi[10] = beta * b * b;               // |+ 0 + 0>
    s.psi[9] = beta * b * s.btilde;         // |+ 0 - 1>
    s.psi[6] = beta * b * s.btilde;         // |- 1 + 0>
    s.psi[5] = beta * s.btilde * s.btilde;  // |- 1 - 1>
    const double norm = s.psi.norm();
    if (std::abs(norm - 1.0) > 1e-12) throw DomainError("four-party state is not normalized");
    s.psi /= norm;
    return s;
}

PartitionEntanglement q_values(cplx alpha, cplx beta, cplx b) {
    require_normalized(alpha, beta);
    const double bt = btilde_of(b);
    const double a = std::abs(alpha);
    const double be = std::abs(beta);
    const double p = std::norm(b);
    const double mb = std::abs(b);
    const double bt2 = bt * bt;
    const double cross = 2.0 * be * be * p * bt2;

    PartitionEntanglement e;
    auto set = [&](Partition m, double v) { e.q[static_cast<std::size_t>(m)] = v; };
    set(Partition::q1q2, 2.0 * a * be * p - cross);
    set(Partition::r1r2, 2.0 * a * be * bt2 - cross);
    set(Partition::q1r1, 2.0 * be * be * mb * bt);
    set(Partition::q2r2, 2.0 * be * be * mb * bt);
    set(Partition::q1r2, 2.0 * a * be * mb * bt - cross);
    set(Partition::q2r1, 2.0 * a * be * mb * bt - cross);
    for (std::size_t i = 0; i < 6; ++i) e.c[i] = std::max(0.0, e.q[i]);
    if (be > 0.0) {
        e.identity_residual = e.Q(Partition::q1q2) + e.Q(Partition::r1r2) +
                              2.0 * (a / be) * e.Q(Partition::q1r1) -
                              2.0 * e.Q(Partition::q1r2) - 2.0 * a * be;
    }
    return e;
}

Eigen::Matrix4cd reduced_density(const FourPartyState& s, Partition p) {
    const auto [a, b] = factors(p);
    return reduce_pure_state(s.psi, a, b);
}

double partition_concurrence_via_trace(const FourPartyState& s, Partition p) {
    return concurrence_wootters(reduced_density(s, p));
}

DistributionTrajectory distribute(cplx alpha, cplx beta, const AmplitudeTrajectory& traj) {
    DistributionTrajectory d{traj.grid, {}, std::nullopt};
    d.steps.reserve(traj.grid.size());
    double worst = 0.0;
    bool defined = true;
    for (Eigen::Index i = 0; i < traj.b.size(); ++i) {
        d.steps.push_back(q_values(alpha, beta, traj.b[i]));
        if (d.steps.back().identity_residual)
            worst = std::max(worst, std::abs(*d.steps.back().identity_residual));
        else
            defined = false;
    }
    if (defined) d.max_identity_residual = worst;
    return d;
}

EsdEsbReport esd_esb_condition(double alpha_abs, const AmplitudeTrajectory& traj) {
    if (!(alpha_abs >= 0.0 && alpha_abs < 1.0))
        throw DomainError("esd_esb_condition: need 0 <= |alpha| < 1");
    EsdEsbReport r;
    r.threshold = alpha_abs / std::sqrt(1.0 - alpha_abs * alpha_abs);
    r.threshold_out_of_range = r.threshold >= 1.0;
    double min_p = 1.0;
    for (Eigen::Index i = 0; i < traj.b.size(); ++i) {
        const double p = std::norm(traj.b[i]);
        min_p = std::min(min_p, p);
        const double t = traj.grid.time(static_cast<std::size_t>(i));
        if (!r.t_prime && p < r.threshold) r.t_prime = t;
        if (!r.t && 1.0 - p > r.threshold) r.t = t;
    }
    r.satisfied = r.t_prime.has_value() && r.t.has_value();
    r.min_abs_b2_at_least_half = min_p >= 0.5;
    const BoundStateReport bs = bound_state(traj.model, traj.omega_0);
    if (!bs.exists) r.no_bound_state_rule = alpha_abs < 1.0 / std::sqrt(2.0);
    return r;
}

AlphaScan alpha_scan(const AmplitudeTrajectory& traj, std::span<const double> alphas) {
    for (double a : alphas)
        if (!(a > 0.0 && a < 1.0)) throw DomainError("alpha_scan: alpha values must lie in (0, 1)");
    AlphaScan scan;
    scan.bound = bound_state(traj.model, traj.omega_0);
    const SteadyState mag = steady_state_magnitude(traj);  // enforces the horizon
    const Eigen::VectorXd p = traj.b.cwiseAbs2();
    const SteadyState p_inf = final_window(p);

    scan.rows = parallel_map(alphas.size(), [&](std::size_t k) {
        const double a = alphas[k];
        const double be = std::sqrt(1.0 - a * a);
        const Eigen::Index n = traj.b.size();
        std::array<Eigen::VectorXd, 6> series;
        for (auto& s : series) s.resize(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const PartitionEntanglement e = q_values(a, be, traj.b[i]);
            for (std::size_t m = 0; m < 6; ++m) series[m][i] = e.c[m];
        }
        AlphaScanRow row;
        row.alpha = a;
        row.abs_b2 = p_inf;
        row.converged = mag.converged;
        for (std::size_t m = 0; m < 6; ++m) {
            row.steady[m] = final_window(series[m]);
            row.converged = row.converged && row.steady[m].converged;
        }
        row.q1q2_events = detect_events(series[0], traj.grid);
        row.r1r2_events = detect_events(series[1], traj.grid);
        return row;
    });
    return scan;
}

AlphaScan alpha_scan(const SpectralModel& m, double omega_0, const TimeGrid& grid,
                     std::span<const double> alphas) {
    return alpha_scan(solve_exact(m, omega_0, grid), alphas);
}

std::vector<double> Axis::values() const {
    validate();
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        v[i] = log_scale ? min * std::pow(max / min, f) : linspace_point(min, max, i, count);
    }
    if (count > 1) v.back() = max;
    return v;
}

void Axis::validate() const {
    if (parameter.empty()) throw DomainError("scan axis: parameter name is empty");
    if (count == 0) throw DomainError("scan axis '" + parameter + "': count must be >= 1");
    if (!(std::isfinite(min) && std::isfinite(max) && min <= max))
        throw DomainError("scan axis '" + parameter + "': need finite min <= max");
    if (count > 1 && !(min < max))
        throw DomainError("scan axis '" + parameter + "': range is empty");
    if (log_scale && !(min > 0.0))
        throw DomainError("scan axis '" + parameter + "': log scale needs min > 0");
}

ScanGrid phase_diagram(const SpectralModel& base, double omega_0, const TimeGrid& grid,
                       const ScanConfig& scan, unsigned workers) {
    const std::vector<double> xs = scan.x.values();
    const std::vector<double> ys = scan.y.values();
    if (scan.x.parameter == scan.y.parameter)
        throw DomainError("phase_diagram: the two axes must sweep different parameters");
    if (!(scan.alpha > 0.0 && scan.alpha < 1.0))
        throw DomainError("phase_diagram: alpha must lie in (0, 1)");
    // fail early on unknown parameter names
    (void)with_parameter(with_parameter(base, scan.x.parameter, xs[0]), scan.y.parameter, ys[0]);

    const double a = scan.alpha;
    const double be = std::sqrt(1.0 - a * a);
    ScanGrid out;
    out.config = scan;
    out.cells = parallel_map(
        xs.size() * ys.size(),
        [&](std::size_t k) {
            ScanCell cell;
            cell.x = xs[k % xs.size()];
            cell.y = ys[k / xs.size()];
            const SpectralModel m =
                with_parameter(with_parameter(base, scan.x.parameter, cell.x), scan.y.parameter, cell.y);
            validate(m);
            cell.bound = bound_state(m, omega_0);
            const AmplitudeTrajectory traj = solve_exact(m, omega_0, grid);
            const SteadyState mag = steady_state_magnitude(traj);
            const Eigen::Index n = traj.b.size();
            Eigen::VectorXd p(n), cqq(n), crr(n), cqr(n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const PartitionEntanglement e = q_values(a, be, traj.b[i]);
                p[i] = std::norm(traj.b[i]);
                cqq[i] = e.C(Partition::q1q2);
                crr[i] = e.C(Partition::r1r2);
                cqr[i] = e.C(Partition::q1r1);
            }
            cell.abs_b2 = final_window(p);
            cell.c_q1q2 = final_window(cqq);
            cell.c_r1r2 = final_window(crr);
            cell.c_q1r1 = final_window(cqr);
            cell.converged = mag.converged && cell.abs_b2.converged && cell.c_q1q2.converged &&
                             cell.c_r1r2.converged && cell.c_q1r1.converged;
            return cell;
        },
        workers);
    return out;
}

} // namespace qtrap
