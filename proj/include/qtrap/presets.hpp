#pragma once

#include "qtrap/config.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qtrap {

struct Preset {
    std::string name;
    std::string description;
    std::string text;  // config file text
};

/// Built-in scenarios, in listing order.
const std::vector<Preset>& presets();

/// nullptr when the name is unknown.
const Preset* find_preset(std::string_view name);

/// Parsed preset; ConfigError when the name is unknown.
RunConfig preset_config(std::string_view name);

} // namespace qtrap
