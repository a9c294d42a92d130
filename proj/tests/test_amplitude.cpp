#include "qtrap/amplitude.hpp"
#include "qtrap/errors.hpp"
#include "qtrap/quadrature.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

using namespace qtrap;

namespace {

// Single mode as a two-level Hamiltonian: b(t) = [exp(-iHt)]_00, H = [[w0, g], [g, w']].
cplx single_mode_oracle(double w0, double g, double wp, double t) {
    Eigen::Matrix2d H;
    H << w0, g, g, wp;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(H);
    cplx b = 0.0;
    for (int k = 0; k < 2; ++k)
        b += es.eigenvectors()(0, k) * es.eigenvectors()(0, k) * std::polar(1.0, -es.eigenvalues()(k) * t);
    return b;
}

double max_abs_diff_common(const Eigen::VectorXcd& coarse, const Eigen::VectorXcd& fine) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < coarse.size(); ++i) e = std::max(e, std::abs(coarse[i] - fine[2 * i]));
    return e;
}

} // namespace

TEST_CASE("time grid from a horizon") {
    const TimeGrid g = TimeGrid::from_horizon(20.0, 1e-3);
    CHECK(g.n == 20000);
    CHECK(g.t_max() == doctest::Approx(20.0).epsilon(1e-15));
    const TimeGrid h = TimeGrid::from_horizon(1.0, 0.3);
    CHECK(h.n == 4);
    CHECK(h.dt == 0.25);
    CHECK(h.size() == 5);
    CHECK_THROWS_AS((void)TimeGrid::from_horizon(1.0, 0.0), DomainError);
    CHECK_THROWS_AS((void)TimeGrid::from_horizon(-1.0, 0.1), DomainError);
}

TEST_CASE("resonant single mode reproduces |cos(gt)|") {
    const TimeGrid g = TimeGrid::from_horizon(20.0, 1e-3);
    const AmplitudeTrajectory tr = solve_exact(SingleMode{1.0, 1.0}, 1.0, g);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        err = std::max(err, std::abs(std::abs(tr.b[static_cast<Eigen::Index>(i)]) - std::abs(std::cos(g.time(i)))));
    CHECK(err <= 1e-6);
}

TEST_CASE("detuned single mode against two-level propagation") {
    const double w0 = 1.0, g = 0.4, wp = 1.7;
    const TimeGrid grid = TimeGrid::from_horizon(15.0, 2e-3);
    const AmplitudeTrajectory tr = solve_exact(SingleMode{g, wp}, w0, grid);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err = std::max(err, std::abs(tr.b[static_cast<Eigen::Index>(i)] - single_mode_oracle(w0, g, wp, grid.time(i))));
    CHECK(err <= 1e-6);
}

TEST_CASE("second-order convergence under step halving") {
    const SuperOhmic m{0.2, 3.0, 1.0};
    const auto b1 = solve_exact(m, 1.0, TimeGrid::from_horizon(10.0, 0.02)).b;
    const auto b2 = solve_exact(m, 1.0, TimeGrid::from_horizon(10.0, 0.01)).b;
    const auto b3 = solve_exact(m, 1.0, TimeGrid::from_horizon(10.0, 0.005)).b;
    const double ratio = max_abs_diff_common(b1, b2) / max_abs_diff_common(b2, b3);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("amplitude stays bounded by one") {
    const TimeGrid g = TimeGrid::from_horizon(30.0, 5e-3);
    for (const SpectralModel m : {SpectralModel(SuperOhmic{1.0, 1.0, 1.0}), SpectralModel(Ohmic{0.3, 10.0}),
                                  SpectralModel(Lorentzian{3.0, 0.1, 1.0}), SpectralModel(Lorentzian{3.0, 15.0, 1.0})}) {
        const AmplitudeTrajectory tr = solve_exact(m, 1.0, g);
        CHECK(tr.b.cwiseAbs().maxCoeff() <= 1.0 + 1e-6);
    }
}

TEST_CASE("half-line Lorentzian against the branch-cut representation") {
    // b(t) = int J(w) e^{-iwt} / [(w - w0 + c I(w))^2 + (pi J(w))^2] dw, I the principal-value resolvent;
    // no bound state here, so the cut carries all of b
    const double gam = 0.2, lam = 15.0, w0 = 1.0, pi = std::numbers::pi;
    const double c = gam * lam * lam / (2.0 * pi);
    auto J = [&](double w) { return c / ((w - w0) * (w - w0) + lam * lam); };
    auto I = [&](double w) {
        const double D = w0 - w, A = 1.0 / (D * D + lam * lam), T = pi / 2 + std::atan(w0 / lam);
        return A * (D / lam * T - std::log(std::abs(w)) + 0.5 * std::log(w0 * w0 + lam * lam));
    };
    const TimeGrid g = TimeGrid::from_horizon(4.0, 1e-3);
    const AmplitudeTrajectory tr = solve_exact(Lorentzian{gam, lam, w0}, w0, g);
    for (double t : {0.5, 2.0, 4.0}) {
        auto f = [&](double w) -> cplx {
            const double den = w - w0 + c * I(w), pj = pi * J(w);
            return J(w) * std::polar(1.0, -w * t) / (den * den + pj * pj);
        };
        cplx b = 0.0;
        for (int k = 0; k < 4000; ++k) b += quad::integrate(f, 0.1 * k, 0.1 * (k + 1), 1e-12, 1e-15).value;
        const auto i = static_cast<Eigen::Index>(std::lround(t / g.dt));
        CHECK(std::abs(std::abs(tr.b[i]) - std::abs(b)) < 1e-5);
    }
}

TEST_CASE("full-line Lorentzian against the damped Jaynes-Cummings closed form") {
    // kernel (gamma lam / 2) e^{-lam x} e^{-i w0 x}; |b| = e^{-lam t/2} [cosh(dt/2) + lam/d sinh(dt/2)],
    // d = sqrt(lam^2 - 2 gamma lam); close to exp(-gamma t / 2) once lam t >> 1
    const double gam = 0.2, lam = 15.0;
    const double d = std::sqrt(lam * lam - 2.0 * gam * lam);
    const TimeGrid g = TimeGrid::from_horizon(10.0, 1e-3);
    std::vector<cplx> f(g.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        f[j] = 0.5 * gam * lam * std::exp(-lam * g.time(j)) * std::polar(1.0, -g.time(j));
    const Eigen::VectorXcd b = solve_memory_equation(f, 1.0, g.dt);
    double err = 0.0, markov = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double t = g.time(i);
        const double exact = std::exp(-0.5 * lam * t) * (std::cosh(0.5 * d * t) + lam / d * std::sinh(0.5 * d * t));
        const double bi = std::abs(b[static_cast<Eigen::Index>(i)]);
        err = std::max(err, std::abs(bi - exact));
        markov = std::max(markov, std::abs(bi - std::exp(-0.5 * gam * t)));
    }
    CHECK(err < 1e-6);
    CHECK(markov < 0.01);
}

TEST_CASE("Markovian closed form") {
    const SuperOhmic m{0.2, 3.0, 1.0};
    const MarkovianCoefficients c = markovian_coefficients(m, 1.0);
    CHECK(c.gamma0 == doctest::Approx(2.0 * std::numbers::pi * 0.2 * std::exp(-1.0 / 3.0)).epsilon(1e-14));
    CHECK(c.omega0_shifted == doctest::Approx(2.0 * (1.0 - c.delta_omega)).epsilon(1e-15));
    const TimeGrid g = TimeGrid::from_horizon(5.0, 1e-3);
    const auto tr = solve_markovian(m, 1.0, g);
    for (std::size_t i = 0; i < g.size(); i += 500)
        CHECK(std::norm(tr.b[static_cast<Eigen::Index>(i)]) == doctest::Approx(std::exp(-c.gamma0 * g.time(i))).epsilon(1e-12));
    // differenced rates of an exponential: central -> sinh(z dt)/dt, ends -> one-sided stencil
    const RateTrajectory r = rates_from_amplitude(tr);
    const cplx z(0.5 * c.gamma0, 1.0 - c.delta_omega);
    const double h = tr.grid.dt;
    const cplx central = std::sinh(z * h) / h;
    const cplx end = (3.0 - 4.0 * std::exp(-z * h) + std::exp(-2.0 * z * h)) / (2.0 * h);
    for (Eigen::Index i = 1; i + 1 < r.gamma.size(); i += 700) {
        CHECK(r.gamma[i] == doctest::Approx(2.0 * central.real()).epsilon(1e-8));
        CHECK(r.omega_shift[i] == doctest::Approx(2.0 * central.imag()).epsilon(1e-8));
    }
    CHECK(r.gamma[0] == doctest::Approx(2.0 * end.real()).epsilon(1e-8));
    CHECK(r.omega_shift[0] == doctest::Approx(2.0 * end.imag()).epsilon(1e-8));
}

TEST_CASE("rates are masked where the amplitude vanishes") {
    const TimeGrid g{0.1, 4};
    Eigen::VectorXcd b(5);
    b << 1.0, 0.5, 0.0, 0.5, 1.0;
    const RateTrajectory r = rates_from_amplitude({g, b, SingleMode{1.0, 1.0}, 1.0});
    CHECK(RateTrajectory::masked(r.gamma[2]));
    CHECK(RateTrajectory::masked(r.omega_shift[2]));
    CHECK_FALSE(RateTrajectory::masked(r.gamma[1]));
}

namespace {

struct Reintegration {
    double population;  // max |rho11 - |b|^2|
    double coherence;   // max |rho12 / rho12(0) - b|
};

// rho11' = -gamma rho11,  rho12' = -(gamma + i Omega) rho12 / 2, trapezoid in the exponent
Reintegration reintegrate(const SpectralModel& m, double dt) {
    const TimeGrid g = TimeGrid::from_horizon(20.0, dt);
    const AmplitudeTrajectory tr = solve_exact(m, 1.0, g);
    const RateTrajectory r = rates_from_amplitude(tr);
    REQUIRE(r.gamma.allFinite());
    double log_p = 0.0;
    cplx log_c = 0.0;
    Reintegration e{0.0, 0.0};
    for (Eigen::Index i = 1; i < tr.b.size(); ++i) {
        log_p -= 0.5 * g.dt * (r.gamma[i - 1] + r.gamma[i]);
        log_c -= 0.25 * g.dt * (cplx(r.gamma[i - 1], r.omega_shift[i - 1]) + cplx(r.gamma[i], r.omega_shift[i]));
        e.population = std::max(e.population, std::abs(std::exp(log_p) - std::norm(tr.b[i])));
        e.coherence = std::max(e.coherence, std::abs(std::exp(log_c) - tr.b[i]));
    }
    return e;
}

} // namespace

TEST_CASE("rate equations re-integrate the populations and coherences") {
    const SuperOhmic m{0.2, 3.0, 1.0};
    const Reintegration coarse = reintegrate(m, 1e-3);
    CHECK(coarse.population <= 1e-4);
    // the accumulated phase carries the O(dt^2) bias of the differenced rates
    const Reintegration fine = reintegrate(m, 5e-4);
    const double ratio = coarse.coherence / fine.coherence;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("bound-state plateau matches the residue") {
    const SuperOhmic m{0.2, 3.0, 1.0};
    const TimeGrid g = TimeGrid::from_horizon(50.0, 2e-3);
    const AmplitudeTrajectory tr = solve_exact(m, 1.0, g);
    const SteadyState s = steady_state_magnitude(tr);
    CHECK(s.converged);
    CHECK(std::abs(s.value - *bound_state(m, 1.0).residue) <= 0.05);
}

TEST_CASE("steady-state detector") {
    Eigen::VectorXd flat = Eigen::VectorXd::Constant(100, 0.3);
    const SteadyState s = final_window(flat);
    CHECK(s.value == doctest::Approx(0.3));
    CHECK(s.spread == 0.0);
    CHECK(s.converged);
    Eigen::VectorXd osc(1000);
    for (Eigen::Index i = 0; i < osc.size(); ++i) osc[i] = 0.5 + 0.1 * std::sin(0.3 * static_cast<double>(i));
    CHECK_FALSE(final_window(osc).converged);
    const AmplitudeTrajectory short_run = solve_exact(SuperOhmic{0.2, 3.0, 1.0}, 1.0, TimeGrid::from_horizon(10.0, 0.01));
    CHECK_THROWS_AS((void)steady_state_magnitude(short_run), DomainError);
}

TEST_CASE("memory solver rejects runaway growth") {
    std::vector<cplx> f(50, cplx(-50.0, 0.0));
    CHECK_THROWS_AS((void)solve_memory_equation(f, 1.0, 0.5), NumericError);
}
