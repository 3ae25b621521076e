#include "ptqw/cli/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ptqw/cli/presets.hpp"
#include "ptqw/errors.hpp"

namespace ptqw::cli {
namespace {

template <typename T>
void take(std::optional<T>& base, const std::optional<T>& over) {
  if (over) base = over;
}

template <typename T>
std::function<void(RunConfig&, const nlohmann::json&)> field(std::optional<T> RunConfig::*member) {
  return [member](RunConfig& c, const nlohmann::json& value) { c.*member = value.get<T>(); };
}

const std::map<std::string, std::function<void(RunConfig&, const nlohmann::json&)>>& json_fields() {
  static const std::map<std::string, std::function<void(RunConfig&, const nlohmann::json&)>> fields{
      {"preset", field(&RunConfig::preset)},
      {"theta1", field(&RunConfig::theta1)},
      {"theta2", field(&RunConfig::theta2)},
      {"theta1-f", field(&RunConfig::theta1_f)},
      {"theta2-f", field(&RunConfig::theta2_f)},
      {"p", field(&RunConfig::p)},
      {"coin", field(&RunConfig::coin)},
      {"kgrid", field(&RunConfig::kgrid)},
      {"tgrid", field(&RunConfig::tgrid)},
      {"tmax", field(&RunConfig::tmax)},
      {"resolution", field(&RunConfig::resolution)},
      {"theta1-range", field(&RunConfig::theta1_range)},
      {"theta2-range", field(&RunConfig::theta2_range)},
      {"samples", field(&RunConfig::samples)},
      {"seed", field(&RunConfig::seed)},
      {"out", field(&RunConfig::out)},
      {"format", field(&RunConfig::format)},
      {"dump-probabilities", field(&RunConfig::dump_probabilities)},
  };
  return fields;
}

// Angle expressions may start with '-', which the option parser would read
// as a flag. Glue such values onto their option as --name=value.
std::vector<std::string> glue_negative_values(int argc, const char* const* argv) {
  static const std::vector<std::string> expression_options{
      "--theta1", "--theta2", "--theta1-f", "--theta2-f", "--theta1-range", "--theta2-range"};
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    const bool takes_expression =
        std::find(expression_options.begin(), expression_options.end(), arg) != expression_options.end();
    if (takes_expression && i + 1 < argc && argv[i + 1][0] == '-') {
      arg += "=";
      arg += argv[++i];
    }
    args.push_back(std::move(arg));
  }
  return args;
}

template <typename T>
void bind_option(CLI::App& app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app.add_option_function<T>(name, [&target](const T& value) { target = value; }, help);
}

}  // namespace

RunConfig merge(RunConfig base, const RunConfig& over) {
  if (!over.command.empty()) base.command = over.command;
  take(base.preset, over.preset);
  take(base.theta1, over.theta1);
  take(base.theta2, over.theta2);
  take(base.theta1_f, over.theta1_f);
  take(base.theta2_f, over.theta2_f);
  take(base.p, over.p);
  take(base.coin, over.coin);
  take(base.kgrid, over.kgrid);
  take(base.tgrid, over.tgrid);
  take(base.tmax, over.tmax);
  take(base.resolution, over.resolution);
  take(base.theta1_range, over.theta1_range);
  take(base.theta2_range, over.theta2_range);
  take(base.samples, over.samples);
  take(base.seed, over.seed);
  take(base.out, over.out);
  take(base.format, over.format);
  take(base.dump_probabilities, over.dump_probabilities);
  take(base.config_file, over.config_file);
  return base;
}

RunConfig config_from_json(const nlohmann::json& document) {
  if (!document.is_object()) throw ConfigError("config file must hold a JSON object");
  RunConfig config;
  for (const auto& [key, value] : document.items()) {
    const auto it = json_fields().find(key);
    if (it == json_fields().end()) throw ConfigError("unknown config key '" + key + "'");
    try {
      it->second(config, value);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(document);
}

ParsedArgs parse_command_line(int argc, const char* const* argv) {
  ParsedArgs parsed;
  RunConfig& c = parsed.config;

  CLI::App app{"PT-symmetric quantum-walk quench dynamics", "ptqw"};
  std::string command;
  std::optional<std::string> preset_argument;
  app.add_option("command", command,
                 "phase-diagram | spectrum | quench | fixed-points | chern | reconstruct | preset")
      ->required();
  bind_option(app, "name", preset_argument, "preset name for the 'preset' command");

  bind_option(app, "--preset", c.preset, "fig3a | fig3b | fig4 | fig6");
  bind_option(app, "--config", c.config_file, "JSON file of settings; flags override it");
  bind_option(app, "--theta1", c.theta1, "initial theta1 (expression)");
  bind_option(app, "--theta2", c.theta2, "initial theta2 (expression)");
  bind_option(app, "--theta1-f", c.theta1_f, "final theta1 (expression)");
  bind_option(app, "--theta2-f", c.theta2_f, "final theta2 (expression)");
  bind_option(app, "--p", c.p, "loss probability in [0, 1)");
  bind_option(app, "--coin", c.coin, "initial state: eigen, H, V, D, A, L or R");
  bind_option(app, "--kgrid", c.kgrid, "number of momentum points");
  bind_option(app, "--tgrid", c.tgrid, "number of time points");
  bind_option(app, "--tmax", c.tmax, "final time (steps)");
  bind_option(app, "--resolution", c.resolution, "phase diagram cells per axis");
  bind_option(app, "--theta1-range", c.theta1_range, "phase diagram theta1 range 'lo,hi'");
  bind_option(app, "--theta2-range", c.theta2_range, "phase diagram theta2 range 'lo,hi'");
  bind_option(app, "--samples", c.samples, "photons per measurement configuration (0: exact)");
  bind_option(app, "--seed", c.seed, "shot-noise seed");
  bind_option(app, "--out", c.out, "output path (default stdout)");
  bind_option(app, "--format", c.format, "csv | json");
  bind_option(app, "--dump-probabilities", c.dump_probabilities, "reconstruct: write raw pair probabilities");

  std::vector<std::string> args = glue_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    parsed.help = app.help();
    return parsed;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  c.command = command;
  if (command == "preset") {
    if (!preset_argument) throw ConfigError("'preset' needs a name: fig3a, fig3b, fig4 or fig6");
    c.preset = preset_argument;
  } else if (preset_argument) {
    throw ConfigError("unexpected argument '" + *preset_argument + "'");
  }
  return parsed;
}

RunConfig resolve_layers(const RunConfig& flags) {
  RunConfig file;
  if (flags.config_file) file = load_config_file(*flags.config_file);
  const RunConfig named = merge(file, flags);
  RunConfig layered;
  if (named.preset) layered = preset_config(*named.preset);
  layered = merge(layered, file);
  return merge(layered, flags);
}

}  // namespace ptqw::cli
