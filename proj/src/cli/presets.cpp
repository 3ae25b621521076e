#include "ptqw/cli/presets.hpp"

#include <string>

#include "ptqw/errors.hpp"

namespace ptqw::cli {

RunConfig preset_config(std::string_view name) {
  RunConfig c;
  c.theta1 = "pi/4";
  c.theta2 = "-pi/2";
  c.coin = "eigen";
  if (name == "fig3a") {
    c.theta1_f = "-pi/2";
    c.theta2_f = "pi/3";
    c.p = 0.0;
  } else if (name == "fig3b") {
    c.theta1_f = "-pi/2";
    c.theta2_f = "arcsin(cos(pi/6)/alpha)";
    c.p = 0.36;
  } else if (name == "fig4") {
    c.theta1_f = "-pi/2";
    c.theta2_f = "(pi - arccos(1/alpha))/2";
    c.p = 0.36;
    c.coin = "D";
    c.tmax = 12.0;
  } else if (name == "fig6") {
    c.theta1_f = "7*pi/25";
    c.theta2_f = "-9*pi/20";
    c.p = 0.36;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig3a, fig3b, fig4 or fig6)");
  }
  c.preset = std::string(name);
  return c;
}

std::vector<std::string_view> preset_names() { return {"fig3a", "fig3b", "fig4", "fig6"}; }

}  // namespace ptqw::cli
