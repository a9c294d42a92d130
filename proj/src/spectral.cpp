#include "qtrap/spectral.hpp"

#include "qtrap/errors.hpp"
#include "qtrap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qtrap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require(bool ok, std::string_view model, std::string_view field, double v,
             std::string_view rule) {
    if (!ok) {
        std::ostringstream os;
        os << model << "." << field << " = " << v << " must be " << rule;
        throw DomainError(os.str());
    }
}

void positive(std::string_view model, std::string_view field, double v) {
    require(std::isfinite(v) && v > 0.0, model, field, v, "finite and > 0");
}

void nonnegative(std::string_view model, std::string_view field, double v) {
    require(std::isfinite(v) && v >= 0.0, model, field, v, "finite and >= 0");
}

// ---- band edge helpers (dimensionless: kappa = k / k0, w = omega / omega_c) ----

double pbg_window(double kappa, double kmax) {
    double r = kappa / kmax;
    r *= r;
    r *= r;
    return std::exp(-r * r);
}

// exp(-40) ~ 4e-18: beyond this the window is numerically zero.
double pbg_k_end(double kmax) { return kmax * std::pow(40.0, 0.125); }

double pbg_dispersion(double kappa) { return 1.0 + (kappa - 1.0) * (kappa - 1.0); }

// Sum of GK integrals over n equal pieces; keeps oscillatory integrands local.
cplx integrate_pieces(const std::function<cplx(double)>& f, double a, double b, std::size_t n,
                      double rel_tol, double abs_tol) {
    n = std::max<std::size_t>(n, 1);
    const double h = (b - a) / static_cast<double>(n);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = a + h * static_cast<double>(i);
        const double hi = (i + 1 == n) ? b : lo + h;
        sum += quad::integrate(f, lo, hi, rel_tol, abs_tol / static_cast<double>(n)).value;
    }
    return sum;
}

std::size_t oscillation_pieces(double span_phase) {
    // about one oscillation per piece
    const double n = std::ceil(std::abs(span_phase) / (2.0 * kPi));
    return static_cast<std::size_t>(std::clamp(n, 8.0, 2.0e5));
}

cplx pbg_windowed_hat(double xh, double kmax) {
    const double kend = pbg_k_end(kmax);
    auto f = [=](double kappa) {
        const double w = pbg_dispersion(kappa);
        return kappa * kappa * pbg_window(kappa, kmax) / w * std::polar(1.0, -w * xh);
    };
    const double f0_scale = kend;
    const double phase_end = pbg_dispersion(kend) * xh;
    const std::size_t n = oscillation_pieces(phase_end);
    // the phase w x is only known to ~eps * phase, which caps attainable relative accuracy
    const double rel_tol = std::max(1e-13, 1e-16 * phase_end);
    return integrate_pieces(f, 0.0, kend, n, rel_tol, 1e-15 * f0_scale);
}

// Window-free kernel for xh > 0:
//   e^{-ix} int_{-1}^inf g0(q) e^{-i q^2 x} dq,  g0(q) = (1+q)^2 / (1+q^2),
// using g0(q) + g0(-q) = 2 and a steepest-descent path p = sqrt(1 - i s) from p = 1.
cplx pbg_unwindowed_hat(double xh) {
    auto G = [](cplx p) {
        const cplx a = 1.0 - p;
        return a * a / (1.0 + p * p);
    };
    auto integrand = [&](double s) {
        const cplx p = std::sqrt(cplx(1.0, -s));
        return G(p) * (-kI) / (2.0 * p) * std::exp(-xh * s);
    };
    const cplx L = quad::integrate(integrand, 0.0, kInf, 1e-13, 1e-16).value;
    const cplx ph = std::polar(1.0, -kPi / 4.0);
    return std::polar(1.0, -xh) * ph * std::sqrt(kPi / xh) - std::polar(1.0, -2.0 * xh) * L;
}

// Lorentzian weight c = gamma lam^2 / (2 pi).
double lorentz_weight(const Lorentzian& m) { return m.gamma * m.lam * m.lam / (2.0 * kPi); }

// int_U^inf du / ((u^2 + lam^2)(u + D)), U + D > 0.
double lorentz_tail(double U, double D, double lam) {
    const double A = 1.0 / (D * D + lam * lam);
    return A * (0.5 * std::log(U * U + lam * lam) - std::log(U + D)) +
           A * D / lam * (kPi / 2.0 - std::atan(U / lam));
}

cplx lorentz_kernel(const Lorentzian& m, double x) {
    const double c = lorentz_weight(m);
    if (x == 0.0) return c / m.lam * (kPi / 2.0 + std::atan(m.center / m.lam));
    // x > 0: rotate [0, inf) onto [0, -i inf); the pole at center - i lam is crossed.
    auto h = [&](double s) {
        const cplx u(m.center, s);
        return c / (u * u + m.lam * m.lam) * std::exp(-s * x);
    };
    const double f0 = c / m.lam * kPi;
    const cplx line = quad::integrate(h, 0.0, kInf, 1e-13, 1e-15 * f0).value;
    return 0.5 * m.gamma * m.lam * std::exp(-m.lam * x) * std::polar(1.0, -m.center * x) -
           kI * line;
}

cplx kernel_nonnegative(const SpectralModel& m, double x) {
    return std::visit(
        overloaded{
            [&](const SuperOhmic& s) -> cplx {
                const double wc = s.omega_c;
                const cplx d = 1.0 + kI * (wc * x);
                const cplx d2 = d * d;
                return 6.0 * s.eta * std::pow(wc, 4) / (s.omega_ref * s.omega_ref) / (d2 * d2);
            },
            [&](const Ohmic& o) -> cplx {
                const cplx d = 1.0 + kI * (o.lambda_cut * x);
                return o.eta * o.lambda_cut * o.lambda_cut / (d * d);
            },
            [&](const Lorentzian& l) -> cplx { return lorentz_kernel(l, x); },
            [&](const SingleMode& s) -> cplx {
                return s.g * s.g * std::polar(1.0, -s.omega_prime * x);
            },
            [&](const PbgBandEdge& p) -> cplx {
                const double xh = p.omega_c * x;
                const double scale = p.eta * p.omega_c * p.omega_c;
                if (scale == 0.0) return 0.0;
                return scale * (xh <= 1.0 ? pbg_windowed_hat(xh, p.k_max) : pbg_unwindowed_hat(xh));
            },
        },
        m);
}

double pbg_k_integral(const PbgBandEdge& p, const std::function<double(double, double)>& g) {
    // int_0^kend kappa^2 window(kappa) g(kappa, w(kappa)) dkappa
    const double kend = pbg_k_end(p.k_max);
    auto f = [&](double kappa) {
        return kappa * kappa * pbg_window(kappa, p.k_max) * g(kappa, pbg_dispersion(kappa));
    };
    return quad::integrate_real(f, 0.0, 1.0, 1e-13) + quad::integrate_real(f, 1.0, kend, 1e-13);
}

// Symmetric-exclusion principal value of phi over [a, b] with simple poles at `poles`,
// Richardson-extrapolated over eps = e * scale, e in {1e-2, 5e-3, 2.5e-3}.
double pv_richardson(const std::function<double(double)>& phi, double a, double b,
                     std::vector<double> poles, double scale) {
    std::sort(poles.begin(), poles.end());
    auto P = [&](double eps) {
        double sum = 0.0;
        double lo = a;
        for (double p : poles) {
            sum += quad::integrate_real(phi, lo, p - eps, 1e-13, 1e-15);
            lo = p + eps;
        }
        sum += quad::integrate_real(phi, lo, b, 1e-13, 1e-15);
        return sum;
    };
    const double p1 = P(1e-2 * scale);
    const double p2 = P(5e-3 * scale);
    const double p3 = P(2.5e-3 * scale);
    const double r1 = 2.0 * p2 - p1;
    const double r2 = 2.0 * p3 - p2;
    return (8.0 * r2 - r1) / 7.0;
}

} // namespace

void validate(const SpectralModel& m) {
    std::visit(overloaded{
                   [](const SuperOhmic& s) {
                       nonnegative("super_ohmic", "eta", s.eta);
                       positive("super_ohmic", "omega_c", s.omega_c);
                       positive("super_ohmic", "omega_ref", s.omega_ref);
                   },
                   [](const Ohmic& o) {
                       nonnegative("ohmic", "eta", o.eta);
                       positive("ohmic", "lambda_cut", o.lambda_cut);
                   },
                   [](const Lorentzian& l) {
                       nonnegative("lorentzian", "gamma", l.gamma);
                       positive("lorentzian", "lam", l.lam);
                       positive("lorentzian", "center", l.center);
                   },
                   [](const SingleMode& s) {
                       nonnegative("single_mode", "g", s.g);
                       positive("single_mode", "omega_prime", s.omega_prime);
                   },
                   [](const PbgBandEdge& p) {
                       nonnegative("pbg", "eta", p.eta);
                       positive("pbg", "omega_c", p.omega_c);
                       require(std::isfinite(p.k_max) && p.k_max >= 2.0, "pbg", "k_max", p.k_max,
                               "finite and >= 2");
                   },
               },
               m);
}

std::string_view kind_name(const SpectralModel& m) {
    return std::visit(overloaded{
                          [](const SuperOhmic&) { return std::string_view("super_ohmic"); },
                          [](const Ohmic&) { return std::string_view("ohmic"); },
                          [](const Lorentzian&) { return std::string_view("lorentzian"); },
                          [](const SingleMode&) { return std::string_view("single_mode"); },
                          [](const PbgBandEdge&) { return std::string_view("pbg"); },
                      },
                      m);
}

SpectralModel make_model(std::string_view kind) {
    if (kind == "super_ohmic") return SuperOhmic{};
    if (kind == "ohmic") return Ohmic{};
    if (kind == "lorentzian") return Lorentzian{};
    if (kind == "single_mode") return SingleMode{};
    if (kind == "pbg") return PbgBandEdge{};
    throw DomainError("unknown model kind '" + std::string(kind) + "'");
}

std::vector<std::pair<std::string, double>> parameters(const SpectralModel& m) {
    using P = std::vector<std::pair<std::string, double>>;
    return std::visit(overloaded{
                          [](const SuperOhmic& s) { return P{{"eta", s.eta}, {"omega_c", s.omega_c}}; },
                          [](const Ohmic& o) { return P{{"eta", o.eta}, {"lambda_cut", o.lambda_cut}}; },
                          [](const Lorentzian& l) { return P{{"gamma", l.gamma}, {"lam", l.lam}}; },
                          [](const SingleMode& s) { return P{{"g", s.g}, {"omega_prime", s.omega_prime}}; },
                          [](const PbgBandEdge& p) {
                              return P{{"eta", p.eta}, {"omega_c", p.omega_c}, {"k_max", p.k_max}};
                          },
                      },
                      m);
}

SpectralModel with_parameter(SpectralModel m, std::string_view name, double value) {
    bool found = false;
    auto set = [&](std::string_view key, double& field) {
        if (name == key) {
            field = value;
            found = true;
        }
    };
    std::visit(overloaded{
                   [&](SuperOhmic& s) {
                       set("eta", s.eta);
                       set("omega_c", s.omega_c);
                   },
                   [&](Ohmic& o) {
                       set("eta", o.eta);
                       set("lambda_cut", o.lambda_cut);
                   },
                   [&](Lorentzian& l) {
                       set("gamma", l.gamma);
                       set("lam", l.lam);
                   },
                   [&](SingleMode& s) {
                       set("g", s.g);
                       set("omega_prime", s.omega_prime);
                   },
                   [&](PbgBandEdge& p) {
                       set("eta", p.eta);
                       set("omega_c", p.omega_c);
                       set("k_max", p.k_max);
                   },
               },
               m);
    if (!found) {
        throw DomainError("model '" + std::string(kind_name(m)) + "' has no parameter '" +
                          std::string(name) + "'");
    }
    return m;
}

SpectralModel anchored(SpectralModel m, double omega_0) {
    if (auto* s = std::get_if<SuperOhmic>(&m)) s->omega_ref = omega_0;
    if (auto* l = std::get_if<Lorentzian>(&m)) l->center = omega_0;
    return m;
}

double reference_frequency(const SpectralModel& m, double omega_0) {
    if (const auto* p = std::get_if<PbgBandEdge>(&m)) return p->omega_c;
    return omega_0;
}

double frequency_window(const SpectralModel& m, double omega_0) {
    return std::visit(
        overloaded{
            [&](const SuperOhmic& s) { return std::max(30.0 * s.omega_c, 4.0 * omega_0); },
            [&](const Ohmic& o) { return std::max(30.0 * o.lambda_cut, 4.0 * omega_0); },
            [&](const Lorentzian& l) {
                return std::max(l.center + 40.0 * l.lam, 4.0 * std::max(omega_0, l.center));
            },
            [&](const SingleMode& s) { return 2.0 * std::max(s.omega_prime, omega_0); },
            [&](const PbgBandEdge& p) { return p.omega_c * pbg_dispersion(pbg_k_end(p.k_max)); },
        },
        m);
}

double density(const SpectralModel& m, double omega) {
    if (!(omega >= 0.0)) throw DomainError("density: omega must be >= 0");
    return std::visit(
        overloaded{
            [&](const SuperOhmic& s) {
                return s.eta * omega * omega * omega / (s.omega_ref * s.omega_ref) *
                       std::exp(-omega / s.omega_c);
            },
            [&](const Ohmic& o) { return o.eta * omega * std::exp(-omega / o.lambda_cut); },
            [&](const Lorentzian& l) {
                const double u = omega - l.center;
                return lorentz_weight(l) / (u * u + l.lam * l.lam);
            },
            [&](const SingleMode&) -> double {
                throw DomainError("density: single_mode has no pointwise spectral density");
            },
            [&](const PbgBandEdge& p) {
                const double w = omega / p.omega_c;
                if (w < 1.0) return 0.0;
                if (w == 1.0) return kInf;
                const double r = std::sqrt(w - 1.0);
                double sum = 0.0;
                for (double kappa : {1.0 + r, 1.0 - r}) {
                    if (kappa < 0.0) continue;
                    sum += kappa * kappa * pbg_window(kappa, p.k_max) / (2.0 * w * r);
                }
                return p.eta * p.omega_c * sum;
            },
        },
        m);
}

cplx kernel(const SpectralModel& m, double x) {
    if (!std::isfinite(x)) throw DomainError("kernel: x must be finite");
    if (x < 0.0) return std::conj(kernel_nonnegative(m, -x));
    return kernel_nonnegative(m, x);
}

std::vector<cplx> kernel_samples(const SpectralModel& m, double dt, std::size_t n) {
    std::vector<cplx> f(n + 1);
    for (std::size_t j = 0; j <= n; ++j) f[j] = kernel(m, dt * static_cast<double>(j));
    return f;
}

cplx kernel_quadrature(const SpectralModel& m, double x) {
    if (!std::isfinite(x)) throw DomainError("kernel_quadrature: x must be finite");
    if (x < 0.0) return std::conj(kernel_quadrature(m, -x));
    return std::visit(
        overloaded{
            [&](const SingleMode& s) -> cplx {
                return s.g * s.g * std::polar(1.0, -s.omega_prime * x);
            },
            [&](const PbgBandEdge& p) -> cplx {
                return p.eta * p.omega_c * p.omega_c * pbg_windowed_hat(p.omega_c * x, p.k_max);
            },
            [&](const Lorentzian& l) -> cplx {
                const double c = lorentz_weight(l);
                auto J = [&](double w) { return density(l, w); };
                if (x == 0.0) {
                    const double W = frequency_window(l, l.center);
                    const double body = quad::integrate_real(J, 0.0, W, 1e-14);
                    return body + c / l.lam * (kPi / 2.0 - std::atan((W - l.center) / l.lam));
                }
                const double W = std::max(frequency_window(l, l.center), l.center + 200.0 / x);
                auto f = [&](double w) { return J(w) * std::polar(1.0, -w * x); };
                const cplx body =
                    integrate_pieces(f, 0.0, W, oscillation_pieces(W * x), 1e-13, 1e-16);
                // integration by parts on [W, inf): e^{-iWx} sum_n J^(n)(W) / (ix)^(n+1)
                const double u = W - l.center;
                const double L = 1.0 / (u * u + l.lam * l.lam);
                const double d0 = c * L;
                const double d1 = c * (-2.0 * u * L * L);
                const double d2 = c * (6.0 * u * u - 2.0 * l.lam * l.lam) * L * L * L;
                const double d3 = c * (-24.0 * u * (u * u - l.lam * l.lam)) * L * L * L * L;
                const cplx ix = kI * x;
                const cplx tail = d0 / ix + d1 / (ix * ix) + d2 / (ix * ix * ix) +
                                  d3 / (ix * ix * ix * ix);
                return body + std::polar(1.0, -W * x) * tail;
            },
            [&](const auto& smooth) -> cplx {
                // super-Ohmic and Ohmic: exponentially cut off, tail beyond W negligible
                const SpectralModel mm = smooth;
                const double W = frequency_window(mm, 0.0);
                auto f = [&](double w) { return density(mm, w) * std::polar(1.0, -w * x); };
                return integrate_pieces(f, 0.0, W, oscillation_pieces(W * x), 1e-13, 1e-16);
            },
        },
        m);
}

double level_shift_y(const SpectralModel& m, double omega_0, double E) {
    if (!(E < 0.0)) throw DomainError("level_shift_y: E must be < 0");
    return std::visit(
        overloaded{
            [&](const Lorentzian& l) {
                const double c = lorentz_weight(l);
                const double D = l.center - E;
                const double d = -E;
                const double A = 1.0 / (D * D + l.lam * l.lam);
                const double T = kPi / 2.0 + std::atan(l.center / l.lam);
                const double I = A * (D / l.lam * T - std::log(d) +
                                      0.5 * std::log(l.center * l.center + l.lam * l.lam));
                return omega_0 - c * I;
            },
            [&](const SingleMode& s) { return omega_0 - s.g * s.g / (s.omega_prime - E); },
            [&](const PbgBandEdge& p) {
                const double Eh = E / p.omega_c;
                const double I =
                    pbg_k_integral(p, [&](double, double w) { return 1.0 / (w * (w - Eh)); });
                return omega_0 - p.eta * p.omega_c * I;
            },
            [&](const auto& smooth) {
                const SpectralModel mm = smooth;
                const double W = frequency_window(mm, omega_0);
                auto f = [&](double w) { return density(mm, w) / (w - E); };
                return omega_0 - quad::integrate_real(f, 0.0, W, 1e-13) - quad::integrate_real(f, W, kInf, 1e-13);
            },
        },
        m);
}

double level_shift_slope(const SpectralModel& m, double omega_0, double E) {
    if (!(E < 0.0)) throw DomainError("level_shift_slope: E must be < 0");
    return std::visit(
        overloaded{
            [&](const Lorentzian& l) {
                const double c = lorentz_weight(l);
                const double D = l.center - E;
                const double d = -E;
                const double A = 1.0 / (D * D + l.lam * l.lam);
                const double T = kPi / 2.0 + std::atan(l.center / l.lam);
                const double B = D / l.lam * T - std::log(d) +
                                 0.5 * std::log(l.center * l.center + l.lam * l.lam);
                return c * (2.0 * D * A * A * B + A * (1.0 / d - T / l.lam));
            },
            [&](const SingleMode& s) {
                const double u = s.omega_prime - E;
                return s.g * s.g / (u * u);
            },
            [&](const PbgBandEdge& p) {
                const double Eh = E / p.omega_c;
                return p.eta * pbg_k_integral(p, [&](double, double w) {
                           return 1.0 / (w * (w - Eh) * (w - Eh));
                       });
            },
            [&](const auto& smooth) {
                const SpectralModel mm = smooth;
                const double W = frequency_window(mm, omega_0);
                auto f = [&](double w) { return density(mm, w) / ((w - E) * (w - E)); };
                return quad::integrate_real(f, 0.0, W, 1e-13) + quad::integrate_real(f, W, kInf, 1e-13);
            },
        },
        m);
}

BoundStateReport bound_state(const SpectralModel& m, double omega_0) {
    validate(m);
    if (!(omega_0 > 0.0 && std::isfinite(omega_0)))
        throw DomainError("bound_state: omega_0 must be finite and > 0");

    BoundStateReport r;
    if (const auto* s = std::get_if<SingleMode>(&m)) {
        // dressed levels of the 2x2 one-excitation block; lower one reported
        const double mid = 0.5 * (omega_0 + s->omega_prime);
        const double half = 0.5 * (omega_0 - s->omega_prime);
        const double e = mid - std::sqrt(half * half + s->g * s->g);
        r.exists = true;
        r.energy = e;
        r.y_at_zero = omega_0 - s->g * s->g / s->omega_prime;
        const double u = s->omega_prime - e;
        r.residue = 1.0 / (1.0 + s->g * s->g / (u * u));
        return r;
    }

    r.y_at_zero = std::visit(
        overloaded{
            [&](const SuperOhmic& s) -> std::optional<double> {
                return omega_0 -
                       2.0 * s.eta * std::pow(s.omega_c, 3) / (s.omega_ref * s.omega_ref);
            },
            [&](const Ohmic& o) -> std::optional<double> {
                return omega_0 - o.eta * o.lambda_cut;
            },
            [&](const PbgBandEdge& p) -> std::optional<double> {
                const double I = pbg_k_integral(p, [](double, double w) { return 1.0 / (w * w); });
                return omega_0 - p.eta * p.omega_c * I;
            },
            // J(0) > 0: the integral diverges logarithmically as E -> 0-
            [&](const auto&) -> std::optional<double> { return std::nullopt; },
        },
        m);

    auto g = [&](double E) { return level_shift_y(m, omega_0, E) - E; };
    const double e_hi = -1e-6 * omega_0;
    const double g_hi = g(e_hi);
    r.exists = r.y_at_zero ? (*r.y_at_zero < 0.0) : (g_hi < 0.0);
    if (!r.exists) return r;

    double lo;
    double hi;
    if (g_hi >= 0.0) {
        lo = e_hi;
        hi = 0.0;
    } else {
        hi = e_hi;
        lo = 2.0 * e_hi;
        while (g(lo) < 0.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -1e6 * omega_0) {
                throw NumericError("bound_state: bracket expansion passed -1e6 omega_0",
                                   std::abs(lo));
            }
        }
    }
    const double tol = 1e-11 * omega_0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double e = 0.5 * (lo + hi);
    r.energy = e;
    r.residue = 1.0 / (1.0 + level_shift_slope(m, omega_0, e));
    return r;
}

double principal_value(const std::function<double(double)>& J, double omega_0, double W) {
    if (!(omega_0 > 0.0) || !(W > 1.1 * omega_0))
        throw DomainError("principal_value: need 0 < omega_0 and W > 1.1 omega_0");
    auto phi = [&](double w) { return J(w) / (w - omega_0); };
    return pv_richardson(phi, 0.0, W, {omega_0}, omega_0);
}

double lamb_shift_markovian(const SpectralModel& m, double omega_0) {
    validate(m);
    if (!(omega_0 > 0.0 && std::isfinite(omega_0)))
        throw DomainError("lamb_shift_markovian: omega_0 must be finite and > 0");
    return std::visit(
        overloaded{
            [&](const SingleMode& s) {
                const double u = s.omega_prime - omega_0;
                if (std::abs(u) <= 1e-12 * omega_0)
                    throw DomainError("lamb_shift_markovian: resonant single mode has no shift");
                return s.g * s.g / u;
            },
            [&](const Lorentzian& l) {
                if (l.gamma == 0.0) return 0.0;
                const double W = frequency_window(l, omega_0);
                auto J = [&](double w) { return density(l, w); };
                return principal_value(J, omega_0, W) +
                       lorentz_weight(l) * lorentz_tail(W - l.center, l.center - omega_0, l.lam);
            },
            [&](const PbgBandEdge& p) {
                if (p.eta == 0.0) return 0.0;
                const double w0 = omega_0 / p.omega_c;
                if (w0 == 1.0)
                    throw DomainError("lamb_shift_markovian: omega_0 at the band edge");
                const double kend = pbg_k_end(p.k_max);
                auto phi = [&](double kappa) {
                    const double w = pbg_dispersion(kappa);
                    return kappa * kappa * pbg_window(kappa, p.k_max) / (w * (w - w0));
                };
                std::vector<double> poles;
                double scale = 1.0;
                if (w0 > 1.0) {
                    const double r = std::sqrt(w0 - 1.0);
                    poles.push_back(1.0 + r);
                    scale = std::min(scale, r);
                    if (1.0 - r > 0.0) {
                        poles.push_back(1.0 - r);
                        scale = std::min(scale, 1.0 - r);
                    }
                }
                const double I = poles.empty() ? quad::integrate_real(phi, 0.0, kend, 1e-13)
                                               : pv_richardson(phi, 0.0, kend, poles, scale);
                return p.eta * p.omega_c * I;
            },
            [&](const auto& smooth) {
                const SpectralModel mm = smooth;
                if (smooth.eta == 0.0) return 0.0;
                const double W = frequency_window(mm, omega_0);
                auto J = [&](double w) { return density(mm, w); };
                auto tail = [&](double w) { return J(w) / (w - omega_0); };
                return principal_value(J, omega_0, W) + quad::integrate_real(tail, W, kInf, 1e-13);
            },
        },
        m);
}

cplx pbg_kernel_unwindowed(const PbgBandEdge& m, double x) {
    if (!(x > 0.0)) throw DomainError("pbg_kernel_unwindowed: x must be > 0");
    return m.eta * m.omega_c * m.omega_c * pbg_unwindowed_hat(m.omega_c * x);
}

cplx pbg_kernel_windowed(const PbgBandEdge& m, double x) {
    if (x < 0.0) return std::conj(pbg_kernel_windowed(m, -x));
    return m.eta * m.omega_c * m.omega_c * pbg_windowed_hat(m.omega_c * x, m.k_max);
}

PbgWindowStudy pbg_window_study(const PbgBandEdge& m, std::span<const double> xs,
                                double tolerance) {
    PbgWindowStudy study;
    study.tolerance = tolerance;
    study.f0_abs = std::abs(pbg_kernel_windowed(m, 0.0));
    PbgBandEdge m2 = m;
    m2.k_max = 2.0 * m.k_max;
    PbgBandEdge m4 = m;
    m4.k_max = 4.0 * m.k_max;
    for (double x : xs) {
        PbgWindowRow row;
        row.x = x;
        row.f_base = pbg_kernel_windowed(m, x);
        row.f_doubled = pbg_kernel_windowed(m2, x);
        row.f_quadrupled = pbg_kernel_windowed(m4, x);
        row.max_change = std::max(std::abs(row.f_doubled - row.f_base),
                                  std::abs(row.f_quadrupled - row.f_doubled)) /
                         study.f0_abs;
        row.within_tolerance = row.max_change < tolerance;
        study.rows.push_back(row);
    }
    return study;
}

} // namespace qtrap
