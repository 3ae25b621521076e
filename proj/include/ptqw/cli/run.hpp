#pragma once

#include <ostream>

#include "ptqw/cli/config.hpp"

namespace ptqw::cli {

/// Executes a fully layered config. The table goes to config.out, or to
/// `out` when no path is set. Library errors propagate.
void run(const RunConfig& config, std::ostream& out);

/// Parses argv, layers preset, config file and flags, and runs. Errors are
/// reported on `err` as one JSON object {"error": {"kind", "message"}}.
/// Exit status: 0 success, 2 configuration error, 1 any other error.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ptqw::cli
