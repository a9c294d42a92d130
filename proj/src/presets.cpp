#include "qtrap/presets.hpp"

#include "qtrap/errors.hpp"

namespace qtrap {

namespace {

std::string super_ohmic(double eta, double wc, const std::string& grid = "") {
    return "command = simulate\n[model]\nmodel = super_ohmic\neta = " + std::to_string(eta) +
           "\nomega_c = " + std::to_string(wc) + "\n" + grid + "[init]\nalpha = 0.7\n";
}

std::string lorentzian(double gamma, double lam, const std::string& grid) {
    return "command = simulate\n[model]\nmodel = lorentzian\ngamma = " + std::to_string(gamma) +
           "\nlam = " + std::to_string(lam) + "\n" + grid + "[init]\nalpha = 0.7\n";
}

std::string pbg(const std::string& command, const std::string& omega_0, const std::string& tail) {
    return "command = " + command + "\n[model]\nmodel = pbg\neta = 0.2\nomega_c = 1\n[system]\nunit = omega_c\nomega_0 = " +
           omega_0 + "\n" + tail;
}

std::string ohmic(double eta, double cut) {
    return "command = distribution\n[model]\nmodel = ohmic\neta = " + std::to_string(eta) +
           "\nlambda_cut = " + std::to_string(cut) + "\n[init]\nalpha = 0.55\n";
}

const std::string kInvSqrt2 = "0.7071067811865476";

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> list{
        {"jc", "resonant single mode, g = omega_0",
         "command = simulate\n[model]\nmodel = single_mode\ng = 1\nomega_prime = 1\n[grid]\nt_max = 20\n"
         "dt = 0.001\n[init]\nalpha = " + kInvSqrt2 + "\n"},
        {"fig-weakf", "super-Ohmic, weak coupling, no bound state", super_ohmic(0.08, 1.0, "[grid]\nt_max = 150\ndt = 0.005\n")},
        {"fig-strongf", "super-Ohmic, strong coupling, bound state", super_ohmic(1.0, 1.0)},
        {"fig-sc", "super-Ohmic, large cutoff, bound state", super_ohmic(0.08, 3.0)},
        {"fig1b", "super-Ohmic (omega_c, eta) = (0.7, 0.2), no bound state", super_ohmic(0.2, 0.7)},
        {"fig1c", "super-Ohmic (omega_c, eta) = (0.7, 1.0), no bound state",
         super_ohmic(1.0, 0.7, "[grid]\nt_max = 500\ndt = 0.005\n")},
        {"fig1d", "super-Ohmic (omega_c, eta) = (3.0, 0.2), bound state", super_ohmic(0.2, 3.0)},
        {"fig3", "Lorentzian gamma = 3, lam = 0.1: sudden death and revivals",
         lorentzian(3.0, 0.1, "[grid]\nt_max = 150\n")},
        {"fig3-l2", "Lorentzian gamma = 3, lam = 2", lorentzian(3.0, 2.0, "")},
        {"fig3-l15", "Lorentzian gamma = 3, lam = 15", lorentzian(3.0, 15.0, "")},
        {"fig4", "Lorentzian gamma = 0.2, lam = 15: near-Markovian", lorentzian(0.2, 15.0, "")},
        {"fig4-g2", "Lorentzian gamma = 2, lam = 15", lorentzian(2.0, 15.0, "")},
        {"fig5", "Lorentzian residual-entanglement phase diagram over (gamma, lam)",
         "command = phase-diagram\n[model]\nmodel = lorentzian\ngamma = 1\nlam = 1\n[grid]\nt_max = 60\n"
         "dt = 0.005\n[init]\nalpha = 0.7\n[scan]\nx_parameter = gamma\nx_min = 0.2\nx_max = 3\nx_count = 6\n"
         "x_log = false\ny_parameter = lam\ny_min = 0.05\ny_max = 15\ny_count = 6\ny_log = true\n"},
        {"bst", "band edge, omega_0 = 0.1 omega_c: alpha sweep with bound state",
         pbg("alpha-scan", "0.1", "[scan]\nalpha_min = 0.05\nalpha_max = 0.95\nalpha_count = 19\n")},
        {"nbst", "band edge, omega_0 = 10 omega_c: alpha sweep without bound state",
         pbg("alpha-scan", "10", "[scan]\nalpha_min = 0.05\nalpha_max = 0.95\nalpha_count = 19\n")},
        {"td-a", "band edge, omega_0 = 0.1 omega_c, alpha = 1/sqrt2", pbg("distribution", "0.1", "[init]\nalpha = " + kInvSqrt2 + "\n")},
        {"td-b", "band edge, omega_0 = 0.1 omega_c, alpha = 0.57", pbg("distribution", "0.1", "[init]\nalpha = 0.57\n")},
        {"td-c", "band edge, omega_0 = 0.1 omega_c, alpha = 0.28", pbg("distribution", "0.1", "[init]\nalpha = 0.28\n")},
        {"osd", "Ohmic (eta, lambda_cut) = (0.1, 5), no bound state", ohmic(0.1, 5.0)},
        {"osd-bound", "Ohmic (eta, lambda_cut) = (0.3, 10), bound state", ohmic(0.3, 10.0)},
    };
    return list;
}

const Preset* find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

RunConfig preset_config(std::string_view name) {
    const Preset* p = find_preset(name);
    if (!p) throw ConfigError({"unknown preset '" + std::string(name) + "'"});
    return parse_config(p->text);
}

} // namespace qtrap
