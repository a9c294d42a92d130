#pragma once

#include "qtrap/amplitude.hpp"
#include "qtrap/distribution.hpp"
#include "qtrap/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qtrap {

enum class Command { Simulate, BoundState, Distribution, AlphaScan, PhaseDiagram, IdentityCheck };

std::string_view command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);

struct AlphaRange {
    double min = 0.05;
    double max = 0.95;
    std::size_t count = 19;
    bool operator==(const AlphaRange&) const = default;
};

/// A validated run description. Frequencies are in units of omega_0, or of the
/// band-edge frequency when unit = "omega_c"; grid defaults are already resolved.
struct RunConfig {
    Command command = Command::Simulate;
    SpectralModel model = SuperOhmic{};
    double omega_0 = 1.0;
    std::string unit = "omega_0";
    double t_max = 50.0;
    double dt = 1e-3;
    std::optional<double> alpha;
    std::optional<std::string> matrix_path;  // 4x4 pair density matrix, "re im" per entry
    AlphaRange alphas;
    std::optional<ScanConfig> scan;
    std::string output = "-";  // "-" is stdout
    std::uint64_t seed = 1;
    std::size_t stride = 1;
    std::size_t samples = 10000;

    TimeGrid grid() const { return TimeGrid::from_horizon(t_max, dt); }
    bool operator==(const RunConfig&) const = default;
};

/// Parses sectioned key = value text. Collects every problem and throws ConfigError.
/// `base_dir` resolves relative file paths for the existence check.
RunConfig parse_config(std::string_view text, const std::string& base_dir = ".");

RunConfig load_config(const std::string& path);

/// Text that parse_config turns back into an equal RunConfig.
std::string emit(const RunConfig& c);

} // namespace qtrap
