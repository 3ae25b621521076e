#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace ptqw::cli {

/// One CLI invocation. Every setting is optional so that a preset, a JSON
/// config file and command-line flags can be layered; unset fields fall
/// back to per-command defaults when the run is resolved.
struct RunConfig {
  std::string command;
  /// Preset name given as `preset <name>` or `--preset <name>`.
  std::optional<std::string> preset;

  std::optional<std::string> theta1;
  std::optional<std::string> theta2;
  std::optional<std::string> theta1_f;
  std::optional<std::string> theta2_f;
  std::optional<double> p;
  /// eigen (lower band of the initial operator), H, V, D, A, L or R.
  std::optional<std::string> coin;

  std::optional<int> kgrid;
  std::optional<int> tgrid;
  std::optional<double> tmax;
  std::optional<int> resolution;
  std::optional<std::string> theta1_range;
  std::optional<std::string> theta2_range;

  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;

  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> dump_probabilities;
  std::optional<std::string> config_file;
};

/// Fields set in `over` replace those in `base`. `command` is taken from
/// `over` when non-empty.
RunConfig merge(RunConfig base, const RunConfig& over);

/// Reads a JSON object whose keys mirror the long flag names ("theta1-f",
/// "kgrid", ...). Unknown keys and wrong value types raise ConfigError.
RunConfig config_from_json(const nlohmann::json& document);
RunConfig load_config_file(const std::string& path);

/// Flags as parsed from the command line, without preset or file layering.
struct ParsedArgs {
  RunConfig config;
  /// Set when --help was requested; holds the help text.
  std::optional<std::string> help;
};

ParsedArgs parse_command_line(int argc, const char* const* argv);

/// preset < config file < flags.
RunConfig resolve_layers(const RunConfig& flags);

}  // namespace ptqw::cli
