#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qtrap {

using cplx = std::complex<double>;

/// J(w) = eta w^3 / omega_ref^2 exp(-w / omega_c).
struct SuperOhmic {
    double eta = 0.0;
    double omega_c = 1.0;
    double omega_ref = 1.0;
    bool operator==(const SuperOhmic&) const = default;
};

/// J(w) = eta w exp(-w / lambda_cut).
struct Ohmic {
    double eta = 0.0;
    double lambda_cut = 1.0;
    bool operator==(const Ohmic&) const = default;
};

/// J(w) = gamma lam^2 / (2 pi ((w - center)^2 + lam^2)), w >= 0.
struct Lorentzian {
    double gamma = 0.0;
    double lam = 1.0;
    double center = 1.0;
    bool operator==(const Lorentzian&) const = default;
};

/// Single lossless mode: f(x) = g^2 exp(-i omega_prime x).
struct SingleMode {
    double g = 0.0;
    double omega_prime = 1.0;
    bool operator==(const SingleMode&) const = default;
};

/// Isotropic band edge w_k = omega_c + A (k - k0)^2 with A = omega_c / k0^2, c k0 = omega_c.
/// Mode sums carry the window exp(-(k / (k_max k0))^8).
struct PbgBandEdge {
    double eta = 0.0;
    double omega_c = 1.0;
    double k_max = 20.0;
    bool operator==(const PbgBandEdge&) const = default;
};

using SpectralModel = std::variant<SuperOhmic, Ohmic, Lorentzian, SingleMode, PbgBandEdge>;

struct BoundStateReport {
    bool exists = false;
    std::optional<double> energy;
    std::optional<double> y_at_zero;
    std::optional<double> residue;
};

struct PbgWindowRow {
    double x;
    cplx f_base;        // window k_max
    cplx f_doubled;     // 2 k_max
    cplx f_quadrupled;  // 4 k_max
    double max_change;  // relative to |f(0)|
    bool within_tolerance;
};

struct PbgWindowStudy {
    double f0_abs;
    double tolerance;
    std::vector<PbgWindowRow> rows;
};

/// Throws DomainError on non-finite or non-positive parameters (couplings may be zero).
void validate(const SpectralModel& m);

std::string_view kind_name(const SpectralModel& m);

/// Default-parameter model of the given kind ("super_ohmic", "ohmic", "lorentzian",
/// "single_mode", "pbg"); DomainError on an unknown kind.
SpectralModel make_model(std::string_view kind);

/// Configurable parameters by name, in declaration order. The super-Ohmic reference
/// frequency and the Lorentzian center follow omega_0 and are not listed.
std::vector<std::pair<std::string, double>> parameters(const SpectralModel& m);

/// Copy of m with one named parameter replaced; DomainError on an unknown name.
SpectralModel with_parameter(SpectralModel m, std::string_view name, double value);

/// Ties the super-Ohmic reference frequency and the Lorentzian center to omega_0.
SpectralModel anchored(SpectralModel m, double omega_0);

/// Frequency unit of the model: omega_c for the band edge, omega_0 otherwise.
double reference_frequency(const SpectralModel& m, double omega_0);

/// Upper end of the frequency integration window.
double frequency_window(const SpectralModel& m, double omega_0);

double density(const SpectralModel& m, double omega);

/// Memory kernel f(x) = int_0^inf J(w) exp(-i w x) dw.
cplx kernel(const SpectralModel& m, double x);

/// Same quantity by brute-force frequency (or k) quadrature; slow, used for verification.
cplx kernel_quadrature(const SpectralModel& m, double x);

/// f(j dt) for j = 0..n.
std::vector<cplx> kernel_samples(const SpectralModel& m, double dt, std::size_t n);

/// y(E) = omega_0 - int J(w) / (w - E) dw, E < 0.
double level_shift_y(const SpectralModel& m, double omega_0, double E);

/// int J(w) / (w - E)^2 dw, E < 0.
double level_shift_slope(const SpectralModel& m, double omega_0, double E);

BoundStateReport bound_state(const SpectralModel& m, double omega_0);

/// Principal value P int_0^W J(w) / (w - w0) dw by symmetric exclusion and
/// Richardson extrapolation over eps = {1e-2, 5e-3, 2.5e-3} w0.
double principal_value(const std::function<double(double)>& J, double omega_0, double W);

double lamb_shift_markovian(const SpectralModel& m, double omega_0);

/// Window-free band-edge kernel (valid for x > 0).
cplx pbg_kernel_unwindowed(const PbgBandEdge& m, double x);

/// Band-edge kernel with an explicit window, by direct k quadrature.
cplx pbg_kernel_windowed(const PbgBandEdge& m, double x);

/// Window sensitivity of the band-edge kernel: two successive doublings of k_max.
PbgWindowStudy pbg_window_study(const PbgBandEdge& m, std::span<const double> xs,
                                double tolerance = 1e-6);

} // namespace qtrap
