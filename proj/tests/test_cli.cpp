#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ptqw/cli/expression.hpp"
#include "ptqw/cli/presets.hpp"
#include "ptqw/cli/run.hpp"
#include "ptqw/cli/table.hpp"
#include "ptqw/floquet.hpp"

using namespace ptqw;
using namespace ptqw::cli;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ptqw");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "ptqw_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("expressions") {
  CHECK(evaluate_expression("pi/4", 0.0) == kPi / 4);
  CHECK(evaluate_expression("-pi/2", 0.0) == -kPi / 2);
  CHECK(evaluate_expression(" 7*pi / 25 ", 0.0) == 7 * kPi / 25);
  CHECK(evaluate_expression("2^3^2", 0.0) == 512.0);
  CHECK(evaluate_expression("-2^2", 0.0) == -4.0);
  CHECK(evaluate_expression("1e-3 + 2", 0.0) == doctest::Approx(2.001));
  const CoinParams lossy(0.0, 0.0, 0.36);
  CHECK(evaluate_expression("alpha", 0.36) == lossy.alpha());
  CHECK(evaluate_expression("gamma*beta", 0.36) == lossy.gamma() * lossy.beta());
  CHECK(evaluate_expression("arcsin(cos(pi/6)/alpha)", 0.36) == std::asin(std::cos(kPi / 6) / lossy.alpha()));
  CHECK(evaluate_expression("(pi - arccos(1/alpha))/2", 0.36) == (kPi - std::acos(1 / lossy.alpha())) / 2);
  CHECK(evaluate_expression("asin(1) + atan(0) + sqrt(4) + exp(0) + log(1) + abs(-1)", 0) ==
        doctest::Approx(kPi / 2 + 4));

  for (const char* bad : {"pi/", "foo", "sin(1", "2 3", "arcsin(2)", "1/0", "", "sinh(1)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(evaluate_expression(bad, 0.0), ConfigError);
  }
}

TEST_CASE("presets store the figure parameters symbolically") {
  const RunConfig b = preset_config("fig3b");
  CHECK(*b.theta2_f == "arcsin(cos(pi/6)/alpha)");
  CHECK(*b.p == 0.36);
  CHECK(*preset_config("fig3a").p == 0.0);
  CHECK(*preset_config("fig4").coin == "D");
  CHECK(*preset_config("fig6").theta1_f == "7*pi/25");
  CHECK(preset_names().size() == 4);
  CHECK_THROWS_AS(preset_config("fig5"), ConfigError);
}

TEST_CASE("layering: preset < config file < flags") {
  const auto path = scratch_dir() / "layer.json";
  std::ofstream(path) << R"({"preset": "fig3b", "p": 0.2, "kgrid": 32})";
  RunConfig flags;
  flags.command = "quench";
  flags.config_file = path.string();
  flags.kgrid = 16;
  const RunConfig merged = resolve_layers(flags);
  CHECK(*merged.theta2_f == "arcsin(cos(pi/6)/alpha)");
  CHECK(*merged.p == 0.2);
  CHECK(*merged.kgrid == 16);

  std::ofstream(path) << R"({"bogus": 1})";
  CHECK_THROWS_AS(resolve_layers(flags), ConfigError);
  std::ofstream(path) << R"({"kgrid": "many"})";
  CHECK_THROWS_AS(resolve_layers(flags), ConfigError);
  std::ofstream(path) << "{";
  CHECK_THROWS_AS(resolve_layers(flags), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-1.0, 6) == "-1.000000");
  CHECK(format_double(-1e-17, 6) == "0.000000");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-0.0) == "0");
}

TEST_CASE("fixed-points for the lossless preset") {
  const Outcome r = invoke({"fixed-points", "--preset", "fig3a"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "k_over_pi,k,kind,residual");
  CHECK(rows[1].rfind("-1.000000,", 0) == 0);
  CHECK(rows[2].rfind("-0.500000,", 0) == 0);
  CHECK(rows[3].rfind("0.000000,", 0) == 0);
  CHECK(rows[4].rfind("0.500000,", 0) == 0);
}

TEST_CASE("preset command exports the Bloch texture") {
  const auto path = scratch_dir() / "texture.csv";
  const Outcome r = invoke({"preset", "fig3b", "--out", path.string(), "--kgrid", "16", "--tgrid", "5"});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = lines(text.str());
  REQUIRE(rows.size() == 1 + 16 * 5);
  CHECK(rows[0] == "k,t,n1,n2,n3");
}

TEST_CASE("chern for the trivial preset is all zeros") {
  const Outcome r = invoke({"chern", "--preset", "fig6", "--kgrid", "64", "--tgrid", "64"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].substr(rows[i].rfind(',') + 1) == "0");
}

TEST_CASE("JSON output carries run metadata") {
  const Outcome r = invoke({"spectrum", "--theta1", "-pi/2", "--theta2", "pi/3", "--kgrid", "8", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["run"]["command"] == "spectrum");
  CHECK(doc["run"]["winding"] == -2);
  CHECK(doc["run"]["angles"]["theta2"]["expression"] == "pi/3");
  CHECK(doc["data"]["k"].size() == 8);
  CHECK(doc["columns"][0] == "k");
}

TEST_CASE("reconstruction output is deterministic for a seed") {
  const std::vector<std::string> args{"reconstruct", "--preset", "fig3b", "--kgrid", "8", "--tmax", "2",
                                      "--samples", "1000", "--seed", "5"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "6";
  CHECK(invoke(other).out != a.out);
}

TEST_CASE("phase diagram rows") {
  const Outcome r = invoke({"phase-diagram", "--p", "0.36", "--resolution", "4", "--kgrid", "64"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 17);
  CHECK(rows[0] == "theta1,theta2,nu,pt_broken,min_gap");
}

TEST_CASE("errors are machine readable") {
  Outcome r = invoke({"frobnicate"});
  CHECK(r.status == 2);
  auto doc = nlohmann::json::parse(r.err);
  CHECK(doc["error"]["kind"] == "ConfigError");

  r = invoke({"quench", "--theta1-f", "pi/"});
  CHECK(r.status == 2);

  r = invoke({"quench", "--theta1-f", "sin(", "--theta2-f", "also("});
  CHECK(r.err.find("sin(") != std::string::npos);

  r = invoke({"quench", "--theta1-f", "0"});
  CHECK(r.status == 2);
  CHECK(r.err.find("theta2-f") != std::string::npos);

  r = invoke({"preset", "fig9"});
  CHECK(r.status == 2);

  r = invoke({"reconstruct", "--theta1", "0.4", "--theta2", "1.0", "--theta1-f", "0.1", "--theta2-f", "0.2"});
  CHECK(r.status == 1);
  doc = nlohmann::json::parse(r.err);
  CHECK(doc["error"]["kind"] == "InvalidParameter");

  r = invoke({"quench", "--preset", "fig3a", "--p", "1.5"});
  CHECK(r.status == 2);

  r = invoke({"quench", "--preset", "fig3a", "--format", "xml"});
  CHECK(r.status == 2);
}

TEST_CASE("help") {
  const Outcome r = invoke({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("--theta1-f") != std::string::npos);
}
