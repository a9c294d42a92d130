#include "qtrap/distribution.hpp"
#include "qtrap/errors.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace qtrap;

namespace {

const double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// Reduced matrix of psi over factors (a, b) by explicit index sums, independent of reduce_pure_state.
Eigen::Matrix4cd brute_reduce(const Vector16cd& psi, int a, int b) {
    Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
    auto bit = [](int idx, int f) { return (idx >> (3 - f)) & 1; };
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            bool same = true;
            for (int f = 0; f < 4; ++f)
                if (f != a && f != b && bit(i, f) != bit(j, f)) same = false;
            if (!same) continue;
            r(2 * bit(i, a) + bit(i, b), 2 * bit(j, a) + bit(j, b)) += psi[i] * std::conj(psi[j]);
        }
    return r;
}

int factor_index(char who, char n) { return (who == 'q' ? 0 : 1) + (n == '1' ? 0 : 2); }

} // namespace

TEST_CASE("four-party state limits") {
    const FourPartyState s1 = assemble_state(kInvSqrt2, kInvSqrt2, 1.0);
    CHECK(std::abs(s1.psi[0] - kInvSqrt2) < 1e-15);
    CHECK(std::abs(s1.psi[10] - kInvSqrt2) < 1e-15);
    CHECK(s1.psi.cwiseAbs().sum() == doctest::Approx(2 * kInvSqrt2));
    const FourPartyState s0 = assemble_state(kInvSqrt2, kInvSqrt2, 0.0);
    CHECK(std::abs(s0.psi[5] - kInvSqrt2) < 1e-15);
    CHECK(partition_concurrence_via_trace(s1, Partition::q1q2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(partition_concurrence_via_trace(s0, Partition::r1r2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(partition_concurrence_via_trace(s1, Partition::q1r2) < 1e-12);
    CHECK_THROWS_AS((void)assemble_state(0.9, 0.9, 0.5), DomainError);
    CHECK_THROWS_AS((void)assemble_state(0.6, 0.8, 1.1), DomainError);
}

TEST_CASE("q values at simple amplitudes") {
    const double a = 0.6, be = 0.8;
    const PartitionEntanglement e1 = q_values(a, be, 1.0);
    CHECK(e1.Q(Partition::q1q2) == doctest::Approx(2 * a * be));
    for (Partition p : {Partition::r1r2, Partition::q1r1, Partition::q1r2}) CHECK(e1.Q(p) == 0.0);
    CHECK(*e1.identity_residual == doctest::Approx(0.0));
    const PartitionEntanglement eh = q_values(a, be, kInvSqrt2);
    CHECK(eh.Q(Partition::q1r1) == doctest::Approx(be * be).epsilon(1e-14));
    CHECK_FALSE(q_values(1.0, 0.0, 0.5).identity_residual.has_value());
}

TEST_CASE("identity and pair symmetry on random samples") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double a = u(rng);
        const cplx alpha = std::polar(a, 6.283 * u(rng));
        const cplx beta = std::polar(std::sqrt(1 - a * a), 6.283 * u(rng));
        const PartitionEntanglement e = q_values(alpha, beta, std::polar(std::sqrt(u(rng)), 6.283 * u(rng)));
        worst = std::max(worst, std::abs(*e.identity_residual));
        REQUIRE(e.Q(Partition::q1r1) == e.Q(Partition::q2r2));
        REQUIRE(e.Q(Partition::q1r2) == e.Q(Partition::q2r1));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("q-formula concurrences equal partial trace plus Wootters") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const double a = 0.02 + 0.96 * u(rng);
        const cplx alpha = std::polar(a, 6.283 * u(rng));
        const cplx beta = std::polar(std::sqrt(1 - a * a), 6.283 * u(rng));
        const cplx b = std::polar(std::sqrt(u(rng)), 6.283 * u(rng));
        const FourPartyState s = assemble_state(alpha, beta, b);
        const PartitionEntanglement e = q_values(alpha, beta, b);
        for (Partition p : kPartitions) {
            worst = std::max(worst, std::abs(e.C(p) - partition_concurrence_via_trace(s, p)));
            const std::string_view n = partition_name(p);
            const Eigen::Matrix4cd brute = brute_reduce(s.psi, factor_index(n[0], n[1]), factor_index(n[2], n[3]));
            REQUIRE((brute - reduced_density(s, p)).cwiseAbs().maxCoeff() < 1e-15);
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("partition names") {
    for (Partition p : kPartitions) CHECK(partition_from_name(partition_name(p)) == p);
    CHECK_THROWS_AS((void)partition_from_name("q1q3"), DomainError);
}

TEST_CASE("lossless single mode: partition entanglement is periodic") {
    // resonant g = 1: b = cos(t) e^{-it}, so every Q repeats with period pi
    const double alpha = 0.6, beta = 0.8;
    const TimeGrid g = TimeGrid::from_horizon(2.0 * std::numbers::pi, std::numbers::pi / 2000.0);
    const AmplitudeTrajectory tr = solve_exact(SingleMode{1.0, 1.0}, 1.0, g);
    const DistributionTrajectory d = distribute(alpha, beta, tr);
    double worst = 0.0;
    for (std::size_t i = 0; i + 2000 < d.steps.size(); ++i)
        for (std::size_t m = 0; m < 6; ++m) worst = std::max(worst, std::abs(d.steps[i].q[m] - d.steps[i + 2000].q[m]));
    CHECK(worst <= 1e-6);
    CHECK(*d.max_identity_residual <= 1e-12);
}

TEST_CASE("ESD/ESB condition") {
    const TimeGrid g = TimeGrid::from_horizon(60.0, 5e-3);
    SUBCASE("no bound state, alpha = 0.5") {
        const AmplitudeTrajectory tr = solve_exact(SuperOhmic{0.2, 0.7, 1.0}, 1.0, g);
        const EsdEsbReport r = esd_esb_condition(0.5, tr);
        CHECK(r.satisfied);
        REQUIRE(r.no_bound_state_rule.has_value());
        CHECK(*r.no_bound_state_rule);
        CHECK(*r.t_prime > 0.0);
    }
    SUBCASE("|b|^2 stays above one half") {
        const AmplitudeTrajectory tr =
            solve_exact(PbgBandEdge{0.2, 1.0, 20.0}, 0.1, TimeGrid::from_horizon(50.0, 1e-3));
        REQUIRE(tr.b.cwiseAbs2().minCoeff() >= 0.5);
        for (double a : {0.1, 0.3, 0.5, 0.7}) {
            const EsdEsbReport r = esd_esb_condition(a, tr);
            CHECK(r.min_abs_b2_at_least_half);
            CHECK_FALSE(r.satisfied);
        }
    }
    SUBCASE("threshold above one") {
        const AmplitudeTrajectory tr = solve_exact(SuperOhmic{0.2, 0.7, 1.0}, 1.0, g);
        const EsdEsbReport r = esd_esb_condition(0.75, tr);
        CHECK(r.threshold_out_of_range);
        CHECK_FALSE(r.satisfied);
    }
}

TEST_CASE("alpha scan: transfer without a bound state") {
    const PbgBandEdge m{0.2, 1.0, 20.0};
    const std::vector<double> alphas{0.3, 0.5, 0.7, 0.9};
    const AlphaScan s = alpha_scan(m, 10.0, TimeGrid::from_horizon(50.0, 1e-3), alphas);
    CHECK_FALSE(s.bound.exists);
    for (const auto& row : s.rows) {
        const double target = 2.0 * row.alpha * std::sqrt(1.0 - row.alpha * row.alpha);
        CHECK(std::abs(row.steady[static_cast<std::size_t>(Partition::r1r2)].value - target) <= 0.02);
        CHECK(row.steady[static_cast<std::size_t>(Partition::q1q2)].value <= 0.02);
        CHECK(row.converged);
    }
    CHECK_THROWS_AS((void)alpha_scan(m, 10.0, TimeGrid::from_horizon(50.0, 1e-3), std::vector<double>{1.0}), DomainError);
}

TEST_CASE("axis values") {
    const Axis lin{"gamma", 0.2, 3.0, 6, false};
    const auto v = lin.values();
    REQUIRE(v.size() == 6);
    CHECK(v[0] == 0.2);
    CHECK(v[2] == 1.32);
    CHECK(v[5] == 3.0);
    const Axis lg{"lam", 0.1, 10.0, 3, true};
    CHECK(lg.values()[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(Axis({"lam", 0.0, 1.0, 3, true}).validate(), DomainError);
    CHECK_THROWS_AS(Axis({"lam", 2.0, 1.0, 3, false}).validate(), DomainError);
}

TEST_CASE("phase diagram: bound flag agrees with the spectral module") {
    const ScanConfig cfg{{"gamma", 0.2, 3.0, 3, false}, {"lam", 0.5, 15.0, 3, true}, 0.7};
    const TimeGrid g = TimeGrid::from_horizon(50.0, 1e-2);
    const ScanGrid grid = phase_diagram(Lorentzian{1.0, 1.0, 1.0}, 1.0, g, cfg, 2);
    REQUIRE(grid.cells.size() == 9);
    for (const auto& c : grid.cells) {
        const BoundStateReport r = bound_state(Lorentzian{c.x, c.y, 1.0}, 1.0);
        CHECK(c.bound.exists == r.exists);
        if (!c.bound.exists && c.converged) CHECK(c.c_q1q2.value < 0.02);
    }
    // x varies fastest
    CHECK(grid.cells[1].x == 1.6);
    CHECK(grid.cells[1].y == 0.5);
    // the two axes must name different parameters of the model
    const ScanConfig same{{"gamma", 0.2, 3.0, 2, false}, {"gamma", 0.5, 1.0, 2, false}, 0.7};
    CHECK_THROWS_AS((void)phase_diagram(Lorentzian{1.0, 1.0, 1.0}, 1.0, g, same), DomainError);
    const ScanConfig unknown{{"eta", 0.2, 3.0, 2, false}, {"lam", 0.5, 1.0, 2, false}, 0.7};
    CHECK_THROWS_AS((void)phase_diagram(Lorentzian{1.0, 1.0, 1.0}, 1.0, g, unknown), DomainError);
}
