#pragma once

#include <string_view>
#include <vector>

#include "ptqw/cli/config.hpp"

namespace ptqw::cli {

/// Named parameter sets, angles kept as expressions.
/// Throws ConfigError for an unknown name.
RunConfig preset_config(std::string_view name);

std::vector<std::string_view> preset_names();

}  // namespace ptqw::cli
