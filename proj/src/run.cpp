#include "qtrap/run.hpp"

#include "qtrap/distribution.hpp"
#include "qtrap/errors.hpp"
#include "qtrap/single_qubit.hpp"
#include "qtrap/two_qubit.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

namespace qtrap {

namespace {

cplx beta_of(double alpha) { return std::sqrt(1.0 - alpha * alpha); }

Eigen::Matrix2cd trace_second(const Eigen::Matrix4cd& r) {
    Eigen::Matrix2cd q;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) q(i, j) = r(2 * i, 2 * j) + r(2 * i + 1, 2 * j + 1);
    return q;
}

std::vector<std::string> partition_columns(const char* prefix) {
    std::vector<std::string> cols;
    for (Partition p : kPartitions) cols.push_back(prefix + std::string(partition_name(p)));
    return cols;
}

csv::Table simulate(const RunConfig& c) {
    const AmplitudeTrajectory traj = solve_exact(c.model, c.omega_0, c.grid());
    const RateTrajectory rates = rates_from_amplitude(traj);

    PairInitial pair_init;
    QubitInitial qubit_init;
    if (c.alpha) {
        pair_init = PairInitial::pure(*c.alpha, beta_of(*c.alpha));
        qubit_init = QubitInitial::pure(*c.alpha, beta_of(*c.alpha));
    } else {
        pair_init = PairInitial::mixed(read_pair_matrix(*c.matrix_path));
        qubit_init = QubitInitial::mixed(trace_second(pair_init.rho));
    }
    const QubitTrajectory qubit = evolve(qubit_init, traj);
    const PairTrajectory pair = evolve_pair(pair_init, traj);

    csv::Table t({"t", "re_b", "im_b", "abs_b2", "gamma", "omega_shift", "purity", "decoherence_factor",
                  "C_q1q2", "Q_q1q2", "Q_r1r2", "Q_q1r1", "Q_q1r2", "identity_residual"});
    for (std::size_t i = 0; i < traj.grid.size(); i += c.stride) {
        const auto k = static_cast<Eigen::Index>(i);
        const cplx b = traj.b[k];
        t.row().add(traj.grid.time(i)).add(b.real()).add(b.imag()).add(std::norm(b));
        t.add(rates.gamma[k]).add(rates.omega_shift[k]).add(qubit.purity[k]).add(qubit.decoherence[k]);
        t.add(pair.concurrence[k]);
        if (c.alpha) {
            const PartitionEntanglement e = q_values(*c.alpha, beta_of(*c.alpha), b);
            t.add(e.Q(Partition::q1q2)).add(e.Q(Partition::r1r2)).add(e.Q(Partition::q1r1));
            t.add(e.Q(Partition::q1r2)).add(e.identity_residual);
        } else {
            for (int j = 0; j < 5; ++j) t.add(std::string{});
        }
    }
    return t;
}

csv::Table bound_state_table(const RunConfig& c) {
    const auto params = parameters(c.model);
    std::vector<std::string> cols{"model", "omega_0"};
    for (const auto& [name, v] : params) cols.push_back(name);
    for (const char* s : {"bound_state", "energy", "y_at_zero", "residue"}) cols.emplace_back(s);
    csv::Table t(cols);
    const BoundStateReport r = bound_state(c.model, c.omega_0);
    t.row().add(std::string(kind_name(c.model))).add(c.omega_0);
    for (const auto& [name, v] : params) t.add(v);
    t.add(r.exists).add(r.energy).add(r.y_at_zero).add(r.residue);
    return t;
}

csv::Table distribution_table(const RunConfig& c) {
    const AmplitudeTrajectory traj = solve_exact(c.model, c.omega_0, c.grid());
    const DistributionTrajectory d = distribute(*c.alpha, beta_of(*c.alpha), traj);
    std::vector<std::string> cols{"t", "abs_b2"};
    for (auto& s : partition_columns("Q_")) cols.push_back(s);
    for (auto& s : partition_columns("C_")) cols.push_back(s);
    cols.emplace_back("identity_residual");
    csv::Table t(cols);
    for (std::size_t i = 0; i < traj.grid.size(); i += c.stride) {
        const auto& e = d.steps[i];
        t.row().add(traj.grid.time(i)).add(std::norm(traj.b[static_cast<Eigen::Index>(i)]));
        for (double q : e.q) t.add(q);
        for (double v : e.c) t.add(v);
        t.add(e.identity_residual);
    }
    return t;
}

std::size_t count(const std::vector<EntanglementEvent>& ev, EventKind k) {
    std::size_t n = 0;
    for (const auto& e : ev) n += e.kind == k;
    return n;
}

csv::Table alpha_scan_table(const RunConfig& c) {
    std::vector<double> alphas(c.alphas.count);
    for (std::size_t i = 0; i < alphas.size(); ++i)
        alphas[i] = linspace_point(c.alphas.min, c.alphas.max, i, c.alphas.count);
    const AlphaScan scan = alpha_scan(c.model, c.omega_0, c.grid(), alphas);
    std::vector<std::string> cols{"alpha", "bound_state", "energy", "steady_abs_b2"};
    for (auto& s : partition_columns("steady_C_")) cols.push_back(s);
    for (const char* s : {"q1q2_deaths", "q1q2_revivals", "r1r2_births", "r1r2_deaths", "converged"})
        cols.emplace_back(s);
    csv::Table t(cols);
    for (const auto& row : scan.rows) {
        t.row().add(row.alpha).add(scan.bound.exists).add(scan.bound.energy).add(row.abs_b2.value);
        for (const auto& s : row.steady) t.add(s.value);
        t.add(count(row.q1q2_events, EventKind::SuddenDeath));
        t.add(count(row.q1q2_events, EventKind::Revival));
        t.add(count(row.r1r2_events, EventKind::Birth));
        t.add(count(row.r1r2_events, EventKind::SuddenDeath));
        t.add(row.converged);
    }
    return t;
}

csv::Table phase_diagram_table(const RunConfig& c) {
    const ScanGrid g = phase_diagram(c.model, c.omega_0, c.grid(), *c.scan);
    csv::Table t({c.scan->x.parameter, c.scan->y.parameter, "bound_state", "energy", "steady_abs_b2",
                  "steady_C_q1q2", "steady_C_r1r2", "steady_C_q1r1", "converged"});
    for (const auto& cell : g.cells) {
        t.row().add(cell.x).add(cell.y).add(cell.bound.exists).add(cell.bound.energy);
        if (cell.converged) {
            t.add(cell.abs_b2.value).add(cell.c_q1q2.value).add(cell.c_r1r2.value).add(cell.c_q1r1.value);
        } else {
            for (int j = 0; j < 4; ++j) t.add(std::string{});  // oscillatory: no steady value
        }
        t.add(cell.converged);
    }
    return t;
}

csv::Table identity_table(const RunConfig& c) {
    csv::Table t({"source", "alpha", "samples", "max_residual"});
    const AmplitudeTrajectory traj = solve_exact(c.model, c.omega_0, c.grid());
    for (double a : {0.28, 0.5, std::numbers::sqrt2 / 2.0, 0.57, 0.7}) {
        const DistributionTrajectory d = distribute(a, beta_of(a), traj);
        t.row().add(std::string("trajectory")).add(a).add(d.steps.size()).add(d.max_identity_residual);
    }
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.samples; ++i) {
        const double a = unit(rng);
        const double pa = 2.0 * std::numbers::pi * unit(rng);
        const double pb = 2.0 * std::numbers::pi * unit(rng);
        const double rb = std::sqrt(unit(rng));
        const double phb = 2.0 * std::numbers::pi * unit(rng);
        const cplx alpha = std::polar(a, pa);
        const cplx beta = std::polar(std::sqrt(1.0 - a * a), pb);
        const PartitionEntanglement e = q_values(alpha, beta, std::polar(rb, phb));
        if (e.identity_residual) worst = std::max(worst, std::abs(*e.identity_residual));
    }
    t.row().add(std::string("random")).add(std::string{}).add(c.samples).add(worst);
    return t;
}

} // namespace

Eigen::Matrix4cd read_pair_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read matrix file '" + path + "'"});
    Eigen::Matrix4cd r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im)) throw ConfigError({"matrix file '" + path + "': expected 32 numbers"});
            r(i, j) = {re, im};
        }
    double extra = 0.0;
    if (in >> extra) throw ConfigError({"matrix file '" + path + "': more than 32 numbers"});
    return r;
}

csv::Table execute(const RunConfig& c) {
    switch (c.command) {
    case Command::Simulate: return simulate(c);
    case Command::BoundState: return bound_state_table(c);
    case Command::Distribution: return distribution_table(c);
    case Command::AlphaScan: return alpha_scan_table(c);
    case Command::PhaseDiagram: return phase_diagram_table(c);
    case Command::IdentityCheck: return identity_table(c);
    }
    throw DomainError("unknown command");
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::string context = "qtrap " + std::string(command_name(c.command)) + ": ";
    try {
        const csv::Table t = execute(c);
        if (c.output == "-") {
            t.write(out);
            out.flush();
        } else {
            std::ofstream f(c.output, std::ios::binary);
            if (!f) throw ConfigError({"cannot open output file '" + c.output + "'"});
            t.write(f);
            if (!f.flush()) throw ConfigError({"failed writing '" + c.output + "'"});
        }
        return 0;
    } catch (const ConfigError& e) {
        err << context << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << context << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        err << context << e.what() << '\n';
        return 3;
    }
}

} // namespace qtrap
