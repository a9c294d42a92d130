#include "qtrap/errors.hpp"
#include "qtrap/quadrature.hpp"
#include "qtrap/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace qtrap;

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^inf w^n e^{-w/c} e^{-iwx} dw = n! / (1/c + ix)^{n+1}
cplx gamma_transform(int n, double c, double x) {
    return std::tgamma(n + 1.0) / std::pow(cplx(1.0 / c, x), n + 1);
}

// int_0^inf w^3 e^{-w/c} / (w + a) dw, a > 0, through E1(a/c) = -Ei(-a/c)
double cubic_resolvent(double c, double a) {
    const double e1 = -std::expint(-a / c);
    return 2.0 * c * c * c - a * c * c + a * a * c - a * a * a * std::exp(a / c) * e1;
}

} // namespace

TEST_CASE("super-Ohmic kernel against the Gamma-function transform") {
    const SuperOhmic m{0.2, 3.0, 1.0};
    const double f0 = std::abs(kernel(m, 0.0));
    for (double x : {0.0, 0.05, 0.7, 3.0, 17.0, 50.0}) {
        const cplx expect = m.eta * gamma_transform(3, m.omega_c, x);
        CHECK(std::abs(kernel(m, x) - expect) <= 1e-13 * f0);
        CHECK(std::abs(kernel_quadrature(m, x) - expect) <= 1e-8 * f0);
    }
}

TEST_CASE("Ohmic kernel against the Gamma-function transform") {
    const Ohmic m{0.3, 10.0};
    const double f0 = std::abs(kernel(m, 0.0));
    for (double x : {0.0, 0.01, 0.4, 5.0, 50.0}) {
        const cplx expect = m.eta * gamma_transform(1, m.lambda_cut, x);
        CHECK(std::abs(kernel(m, x) - expect) <= 1e-13 * f0);
        CHECK(std::abs(kernel_quadrature(m, x) - expect) <= 1e-8 * f0);
    }
}

TEST_CASE("kernel is Hermitian in its argument") {
    const Lorentzian m{3.0, 2.0, 1.0};
    for (double x : {0.3, 2.5}) CHECK(std::abs(kernel(m, -x) - std::conj(kernel(m, x))) < 1e-15);
}

TEST_CASE("Lorentzian kernel: contour form against frequency quadrature") {
    for (const Lorentzian m : {Lorentzian{3.0, 2.0, 1.0}, Lorentzian{3.0, 0.1, 1.0}, Lorentzian{0.2, 15.0, 1.0}}) {
        const double f0 = std::abs(kernel(m, 0.0));
        // f(0) = c/lam (pi/2 + atan(center/lam)), c = gamma lam^2 / 2pi
        const double c = m.gamma * m.lam * m.lam / (2.0 * kPi);
        CHECK(f0 == doctest::Approx(c / m.lam * (kPi / 2 + std::atan(m.center / m.lam))).epsilon(1e-13));
        for (double x : {0.0, 0.01, 0.3, 2.0, 20.0})
            CHECK(std::abs(kernel(m, x) - kernel_quadrature(m, x)) <= 1e-9 * f0);
    }
}

TEST_CASE("single mode kernel and missing density") {
    const SingleMode m{0.5, 1.2};
    CHECK(std::abs(kernel(m, 2.0) - 0.25 * std::polar(1.0, -2.4)) < 1e-15);
    CHECK_THROWS_AS((void)density(m, 1.0), DomainError);
}

TEST_CASE("super-Ohmic level shift against the exponential integral") {
    const SuperOhmic m{0.2, 3.0, 1.0};
    for (double E : {-0.01, -0.5, -5.0, -40.0}) {
        const double y = 1.0 - m.eta * cubic_resolvent(m.omega_c, -E);
        CHECK(level_shift_y(m, 1.0, E) == doctest::Approx(y).epsilon(1e-10));
    }
    // y(0) = w0 - 2 eta wc^3 / w0^2
    CHECK(*bound_state(m, 1.0).y_at_zero == doctest::Approx(1.0 - 2 * 0.2 * 27.0).epsilon(1e-12));
}

TEST_CASE("Lorentzian level shift and slope against direct quadrature") {
    const Lorentzian m{3.0, 2.0, 1.0};
    for (double E : {-1e-3, -0.3, -4.0}) {
        auto J = [&](double w) { return density(m, w); };
        const double I = quad::integrate_real([&](double w) { return J(w) / (w - E); }, 0.0, INFINITY, 1e-13);
        const double S = quad::integrate_real([&](double w) { return J(w) / ((w - E) * (w - E)); }, 0.0,
                                              INFINITY, 1e-13);
        CHECK(level_shift_y(m, 1.0, E) == doctest::Approx(1.0 - I).epsilon(1e-10));
        CHECK(level_shift_slope(m, 1.0, E) == doctest::Approx(S).epsilon(1e-10));
    }
}

TEST_CASE("bound state solves y(E) = E with the residue from the slope") {
    for (const SpectralModel m : {SpectralModel(SuperOhmic{1.0, 1.0, 1.0}), SpectralModel(Ohmic{0.3, 10.0}),
                                  SpectralModel(Lorentzian{3.0, 2.0, 1.0}), SpectralModel(PbgBandEdge{0.2, 1.0, 20.0})}) {
        const double w0 = std::holds_alternative<PbgBandEdge>(m) ? 0.1 : 1.0;
        const BoundStateReport r = bound_state(m, w0);
        REQUIRE(r.exists);
        const double E = *r.energy;
        CHECK(E < 0.0);
        CHECK(std::abs(level_shift_y(m, w0, E) - E) < 1e-9);
        CHECK(*r.residue == doctest::Approx(1.0 / (1.0 + level_shift_slope(m, w0, E))).epsilon(1e-12));
    }
    CHECK(*bound_state(SuperOhmic{1.0, 1.0, 1.0}, 1.0).energy == doctest::Approx(-0.58757).epsilon(1e-4));
    CHECK_FALSE(bound_state(Lorentzian{3.0, 0.1, 1.0}, 1.0).exists);
    CHECK_FALSE(bound_state(PbgBandEdge{0.2, 1.0, 20.0}, 10.0).exists);
}

TEST_CASE("single mode: lower dressed level") {
    const SingleMode m{1.0, 1.0};
    const BoundStateReport r = bound_state(m, 1.0);
    // y(E) = w0 - g^2 / (w' - E) = E  ->  E = 1 - g on resonance
    REQUIRE(r.energy);
    CHECK(*r.energy == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("principal value by subtraction of the pole") {
    const SuperOhmic m{0.2, 3.0, 1.0};
    const double w0 = 1.0, W = 90.0;
    auto J = [&](double w) { return density(m, w); };
    const double Jw0 = J(w0);
    // P int_0^W J/(w - w0) = int_0^W (J(w) - J(w0))/(w - w0) dw + J(w0) ln((W - w0)/w0)
    const double smooth = quad::integrate_real(
        [&](double w) { return w == w0 ? 0.0 : (J(w) - Jw0) / (w - w0); }, 0.0, W, 1e-13);
    const double oracle = smooth + Jw0 * std::log((W - w0) / w0);
    CHECK(principal_value(J, w0, W) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("Markovian Lamb shift of a detuned single mode") {
    CHECK(lamb_shift_markovian(SingleMode{0.3, 1.5}, 1.0) == doctest::Approx(0.09 / 0.5).epsilon(1e-15));
    CHECK_THROWS_AS((void)lamb_shift_markovian(SingleMode{0.3, 1.0}, 1.0), DomainError);
}

TEST_CASE("band-edge kernel: window study and closed path") {
    const PbgBandEdge m{0.2, 1.0, 20.0};
    const std::vector<double> xs{0.25, 0.5, 1.0, 3.0, 10.0};
    const PbgWindowStudy s = pbg_window_study(m, xs);
    CHECK(s.rows.size() == xs.size());
    for (const auto& row : s.rows) {
        CHECK(row.within_tolerance);
        CHECK(row.max_change < 1e-6);
    }
    // window-free closed path and windowed k quadrature agree away from x = 0
    for (double x : {1.0, 5.0})
        CHECK(std::abs(pbg_kernel_windowed(m, x) - pbg_kernel_unwindowed(m, x)) < 1e-8 * s.f0_abs);
}

TEST_CASE("band-edge density vanishes in the gap") {
    const PbgBandEdge m{0.2, 1.0, 20.0};
    CHECK(density(m, 0.5) == 0.0);
    CHECK(density(m, 1.5) > 0.0);
}

TEST_CASE("parameters, with_parameter and validation") {
    SpectralModel m = make_model("lorentzian");
    m = with_parameter(m, "gamma", 3.0);
    m = with_parameter(m, "lam", 0.1);
    const auto p = parameters(m);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == std::pair<std::string, double>{"gamma", 3.0});
    CHECK(p[1] == std::pair<std::string, double>{"lam", 0.1});
    CHECK_THROWS_AS((void)with_parameter(m, "eta", 1.0), DomainError);
    CHECK_THROWS_AS((void)make_model("gaussian"), DomainError);
    CHECK_THROWS_AS(validate(SuperOhmic{-0.1, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(validate(Ohmic{0.1, 0.0}), DomainError);
    CHECK_NOTHROW(validate(SuperOhmic{0.0, 1.0, 1.0}));
    CHECK(std::get<Lorentzian>(anchored(m, 2.0)).center == 2.0);
    CHECK(reference_frequency(PbgBandEdge{0.2, 4.0, 20.0}, 0.1) == 4.0);
}
