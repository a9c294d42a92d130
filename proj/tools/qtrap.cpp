// Command-line front end: runs a config file or a built-in preset and writes CSV.

#include "qtrap/config.hpp"
#include "qtrap/errors.hpp"
#include "qtrap/presets.hpp"
#include "qtrap/run.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct Overrides {
    std::string config;
    std::string preset;
    std::string output;
    std::optional<double> t_max;
    std::optional<double> dt;
    std::optional<double> alpha;
    std::optional<std::size_t> stride;
    std::optional<std::uint64_t> seed;
};

void add_run_options(CLI::App* sub, Overrides& o) {
    auto* cfg = sub->add_option("-c,--config", o.config, "config file");
    auto* pre = sub->add_option("-p,--preset", o.preset, "built-in preset name");
    cfg->excludes(pre);
    sub->add_option("-o,--output", o.output, "output CSV path ('-' for stdout)");
    sub->add_option("--t-max", o.t_max, "time horizon");
    sub->add_option("--dt", o.dt, "time step");
    sub->add_option("--alpha", o.alpha, "initial-state alpha");
    sub->add_option("--stride", o.stride, "emit every n-th time step");
    sub->add_option("--seed", o.seed, "random seed for sampled checks");
}

qtrap::RunConfig resolve(qtrap::Command cmd, const Overrides& o) {
    using qtrap::ConfigError;
    if (o.config.empty() == o.preset.empty()) throw ConfigError({"give exactly one of --config or --preset"});
    qtrap::RunConfig c = o.config.empty() ? qtrap::preset_config(o.preset) : qtrap::load_config(o.config);
    c.command = cmd;
    std::vector<std::string> issues;
    if (o.t_max) {
        if (!(*o.t_max > 0.0)) issues.push_back("--t-max must be > 0");
        c.t_max = *o.t_max;
    }
    if (o.dt) {
        if (!(*o.dt > 0.0)) issues.push_back("--dt must be > 0");
        c.dt = *o.dt;
    }
    if (o.alpha) {
        if (!(*o.alpha > 0.0 && *o.alpha < 1.0)) issues.push_back("--alpha must lie in (0, 1)");
        c.alpha = *o.alpha;
        if (c.scan) c.scan->alpha = *o.alpha;
    }
    if (o.stride) {
        if (*o.stride == 0) issues.push_back("--stride must be >= 1");
        c.stride = *o.stride;
    }
    if (o.seed) c.seed = *o.seed;
    if (!o.output.empty()) c.output = o.output;
    // a preset run under another command must still carry what that command needs
    const bool needs_alpha = cmd == qtrap::Command::Distribution || cmd == qtrap::Command::PhaseDiagram ||
                             (cmd == qtrap::Command::Simulate && !c.matrix_path);
    if (needs_alpha && !c.alpha) issues.push_back("this command needs an alpha (--alpha or [init] alpha)");
    if (cmd == qtrap::Command::PhaseDiagram && !c.scan) issues.push_back("phase-diagram needs x_/y_ axes in [scan]");
    if (!issues.empty()) throw ConfigError(issues);
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Qubit dynamics in structured reservoirs: trapping, entanglement and its distribution"};
    app.require_subcommand(1);

    Overrides o;
    std::vector<std::pair<CLI::App*, qtrap::Command>> runners;
    for (auto [name, cmd, help] : {
             std::tuple{"simulate", qtrap::Command::Simulate, "amplitude, single-qubit and pair trajectory"},
             std::tuple{"bound-state", qtrap::Command::BoundState, "bound-state existence, energy and residue"},
             std::tuple{"distribution", qtrap::Command::Distribution, "six-partition entanglement trajectory"},
             std::tuple{"alpha-scan", qtrap::Command::AlphaScan, "steady partition concurrences versus alpha"},
             std::tuple{"phase-diagram", qtrap::Command::PhaseDiagram, "two-parameter steady-state grid"},
             std::tuple{"identity-check", qtrap::Command::IdentityCheck, "invariance identity residuals"},
         }) {
        auto* sub = app.add_subcommand(name, help);
        add_run_options(sub, o);
        runners.emplace_back(sub, cmd);
    }

    auto* presets = app.add_subcommand("presets", "built-in scenarios");
    presets->require_subcommand(1);
    auto* list = presets->add_subcommand("list", "list preset names");
    std::string show_name;
    auto* show = presets->add_subcommand("show", "print a preset as config text");
    show->add_option("name", show_name, "preset name")->required();

    std::string check_path;
    auto* check = app.add_subcommand("check-config", "parse a config file and print its normalized form");
    check->add_option("path", check_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& p : qtrap::presets()) std::cout << p.name << '\t' << p.description << '\n';
            return 0;
        }
        if (show->parsed()) {
            const qtrap::Preset* p = qtrap::find_preset(show_name);
            if (!p) throw qtrap::ConfigError({"unknown preset '" + show_name + "'"});
            std::cout << p->text;
            return 0;
        }
        if (check->parsed()) {
            std::cout << qtrap::emit(qtrap::load_config(check_path));
            return 0;
        }
        for (const auto& [sub, cmd] : runners)
            if (sub->parsed()) return qtrap::run(resolve(cmd, o), std::cout, std::cerr);
    } catch (const qtrap::ConfigError& e) {
        std::cerr << "qtrap: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
