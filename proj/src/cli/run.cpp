#include "ptqw/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ptqw/chern.hpp"
#include "ptqw/cli/expression.hpp"
#include "ptqw/cli/table.hpp"
#include "ptqw/measurement.hpp"

namespace ptqw::cli {
namespace {

using nlohmann::json;

constexpr const char* kDefaultInitialTheta1 = "pi/4";
constexpr const char* kDefaultInitialTheta2 = "-pi/2";

class Context {
 public:
  explicit Context(const RunConfig& config) : config_(config), loss_(config.p.value_or(0.0)) {
    metadata_["command"] = config.command;
    metadata_["preset"] = config.preset ? json(*config.preset) : json(nullptr);
    metadata_["p"] = loss_;
    if (!(loss_ >= 0.0 && loss_ < 1.0)) throw ConfigError("--p must lie in [0, 1)");
  }

  const RunConfig& config() const { return config_; }
  json& metadata() { return metadata_; }
  double loss() const { return loss_; }

  double angle(const std::optional<std::string>& expression, const std::string& flag,
               const char* fallback = nullptr) {
    if (!expression && !fallback) throw ConfigError("missing --" + flag);
    const std::string text = expression ? *expression : fallback;
    const double value = evaluate_expression(text, loss_);
    metadata_["angles"][flag] = {{"expression", text}, {"value", value}};
    return value;
  }

  CoinParams initial_params() {
    const double t1 = angle(config_.theta1, "theta1", kDefaultInitialTheta1);
    const double t2 = angle(config_.theta2, "theta2", kDefaultInitialTheta2);
    return CoinParams(t1, t2, loss_);
  }

  CoinParams final_params() {
    const double t1 = angle(config_.theta1_f, "theta1-f");
    const double t2 = angle(config_.theta2_f, "theta2-f");
    return CoinParams(t1, t2, loss_);
  }

  /// Single-operator commands use the final angles when given.
  CoinParams operator_params() {
    if (config_.theta1_f || config_.theta2_f) return final_params();
    const double t1 = angle(config_.theta1, "theta1");
    const double t2 = angle(config_.theta2, "theta2");
    return CoinParams(t1, t2, loss_);
  }

  QuenchSpec quench_spec() {
    const CoinParams initial = initial_params();
    QuenchSpec spec{initial, final_params()};
    const std::string coin = config_.coin.value_or("eigen");
    metadata_["coin"] = coin;
    if (coin == "eigen") {
      spec.initial_state = EigenstateLowerBand{};
    } else if (coin == "H") {
      spec.initial_state = coin::horizontal();
    } else if (coin == "V") {
      spec.initial_state = coin::vertical();
    } else if (coin == "D") {
      spec.initial_state = coin::diagonal();
    } else if (coin == "A") {
      spec.initial_state = coin::minus();
    } else if (coin == "L") {
      spec.initial_state = coin::left_circular();
    } else if (coin == "R") {
      spec.initial_state = Spinor(coin::left_circular().conjugate());
    } else {
      throw ConfigError("unknown --coin '" + coin + "' (expected eigen, H, V, D, A, L or R)");
    }
    return spec;
  }

  int positive(const std::optional<int>& value, int fallback, const std::string& flag) {
    const int v = value.value_or(fallback);
    if (v < 1) throw ConfigError("--" + flag + " must be positive");
    metadata_["grid"][flag] = v;
    return v;
  }

  double tmax(double fallback) {
    const double v = config_.tmax.value_or(fallback);
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("--tmax must be a finite non-negative number");
    metadata_["grid"]["tmax"] = v;
    return v;
  }

  AngleRange range(const std::optional<std::string>& text, const std::string& flag) {
    const std::string spec = text.value_or("-pi,pi");
    const auto comma = spec.find(',');
    if (comma == std::string::npos) throw ConfigError("--" + flag + " must look like 'lo,hi'");
    const AngleRange r{evaluate_expression(spec.substr(0, comma), loss_),
                       evaluate_expression(spec.substr(comma + 1), loss_)};
    if (!(r.lo < r.hi)) throw ConfigError("--" + flag + " needs lo < hi");
    metadata_["ranges"][flag] = {r.lo, r.hi};
    return r;
  }

 private:
  const RunConfig& config_;
  double loss_;
  json metadata_;
};

Table bloch_table(const BlochField& field) {
  Table table{{{"k"}, {"t"}, {"n1"}, {"n2"}, {"n3"}}, {}};
  for (std::size_t i = 0; i < field.k.size(); ++i) {
    for (std::size_t j = 0; j < field.t.size(); ++j) {
      const Vec3& n = field.at(i, j);
      table.rows.push_back({field.k[i], field.t[j], n(0), n(1), n(2)});
    }
  }
  return table;
}

Table run_phase_diagram(Context& ctx) {
  const int res = ctx.positive(ctx.config().resolution, 64, "resolution");
  const int n_k = ctx.positive(ctx.config().kgrid, kDefaultMomentumGrid, "kgrid");
  const AngleRange r1 = ctx.range(ctx.config().theta1_range, "theta1-range");
  const AngleRange r2 = ctx.range(ctx.config().theta2_range, "theta2-range");
  Table table{{{"theta1"}, {"theta2"}, {"nu"}, {"pt_broken"}, {"min_gap"}}, {}};
  for (const PhaseDiagramCell& cell : phase_diagram(r1, r2, ctx.loss(), res, res, n_k)) {
    const double nu = cell.winding ? static_cast<double>(*cell.winding) : std::nan("");
    table.rows.push_back({cell.theta1, cell.theta2, nu, static_cast<long long>(cell.pt_broken), cell.min_gap});
  }
  return table;
}

Table run_spectrum(Context& ctx) {
  const CoinParams params = ctx.operator_params();
  const int n_k = ctx.positive(ctx.config().kgrid, kDefaultMomentumGrid, "kgrid");
  const BandStructure bands = band_structure(params, n_k);
  const PtPhase phase = pt_classify(params, n_k);
  ctx.metadata()["pt_phase"] = phase == PtPhase::Broken ? "broken" : "unbroken";
  try {
    ctx.metadata()["winding"] = winding_number(params, n_k);
  } catch (const Error& e) {
    ctx.metadata()["winding"] = nullptr;
    ctx.metadata()["winding_error"] = e.kind();
  }
  Table table{{{"k"}, {"re_e_plus"}, {"im_e_plus"}, {"re_e_minus"}, {"im_e_minus"}, {"d0"}, {"pt_broken"}},
              {}};
  for (std::size_t i = 0; i < bands.k.size(); ++i) {
    const Complex e = bands.energy[i];
    table.rows.push_back({bands.k[i], e.real(), e.imag(), -e.real(), -e.imag(), d0(params, bands.k[i]),
                          static_cast<long long>(bands.pt_broken[i])});
  }
  return table;
}

Table run_quench(Context& ctx) {
  const QuenchSpec spec = ctx.quench_spec();
  const int n_k = ctx.positive(ctx.config().kgrid, 256, "kgrid");
  const int n_t = ctx.positive(ctx.config().tgrid, 61, "tgrid");
  const double t_max = ctx.tmax(6.0);
  ctx.metadata()["source"] = "analytic";
  const auto ks = momentum_grid(n_k);
  const auto ts = time_grid(t_max, n_t);
  return bloch_table(bloch_field(spec, ks, ts));
}

Table fixed_point_table(const std::vector<FixedPoint>& points) {
  Table table{{{"k_over_pi", 6}, {"k"}, {"kind"}, {"residual"}}, {}};
  for (const FixedPoint& fp : points) {
    table.rows.push_back({fp.k / kPi, fp.k, std::string(to_string(fp.kind)), fp.residual});
  }
  return table;
}

Table run_fixed_points(Context& ctx) {
  const QuenchSpec spec = ctx.quench_spec();
  const int n_k = ctx.positive(ctx.config().kgrid, kDefaultMomentumGrid, "kgrid");
  return fixed_point_table(find_fixed_points(spec, n_k));
}

Table run_chern(Context& ctx) {
  const QuenchSpec spec = ctx.quench_spec();
  const int n_k = ctx.positive(ctx.config().kgrid, 256, "kgrid");
  const int n_t = ctx.positive(ctx.config().tgrid, 256, "tgrid");
  const auto points = find_fixed_points(spec, std::max(n_k, kDefaultMomentumGrid));
  ctx.metadata()["fixed_points"] = points.size();

  Table table{{{"k_m_over_pi", 6},
               {"k_n_over_pi", 6},
               {"kind_m"},
               {"kind_n"},
               {"chern_riemann"},
               {"riemann_residual"},
               {"chern_solid_angle"},
               {"chern"}},
              {}};
  long long total = 0;
  for (const Submanifold& sub : build_submanifolds(points)) {
    const ChernResult riemann = chern_riemann(sub, spec, n_k, n_t);
    const ChernResult solid = chern_solid_angle(sub, spec, n_k, n_t);
    total += solid.rounded;
    table.rows.push_back({sub.k_m / kPi, sub.k_n / kPi, std::string(to_string(sub.kind_m)),
                          std::string(to_string(sub.kind_n)), riemann.value, riemann.residual, solid.value,
                          static_cast<long long>(solid.rounded)});
  }
  ctx.metadata()["chern_sum"] = total;
  return table;
}

void dump_probabilities(const std::vector<MeasurementRecord>& records, const std::string& path) {
  Table table{{{"t"}, {"x1"}, {"x2"}, {"j"}, {"P_L"}, {"P_D"}}, {}};
  for (const MeasurementRecord& r : records) {
    for (int x1 = r.pair.x_min(); x1 <= r.pair.x_max(); ++x1) {
      for (int x2 = r.pair.x_min(); x2 <= r.pair.x_max(); ++x2) {
        if (x1 == x2) continue;
        const PairProbability& p = r.pair.at(x1, x2);
        for (int j = 0; j < 4; ++j) {
          table.rows.push_back({static_cast<long long>(r.step), static_cast<long long>(x1),
                                static_cast<long long>(x2), static_cast<long long>(j + 1), p.l[j], p.d[j]});
        }
      }
    }
  }
  std::ofstream file(path);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  write_csv(file, table);
}

Table run_reconstruct(Context& ctx) {
  const QuenchSpec spec = ctx.quench_spec();
  const int n_k = ctx.positive(ctx.config().kgrid, 256, "kgrid");
  const double t_max = ctx.tmax(6.0);
  if (t_max != std::floor(t_max)) throw ConfigError("reconstruct needs an integer --tmax");
  ReconstructionOptions options;
  options.n_samples = ctx.config().samples.value_or(0);
  options.seed = ctx.config().seed.value_or(0);
  if (options.n_samples < 0) throw ConfigError("--samples must be non-negative");
  ctx.metadata()["source"] = "reconstructed";
  ctx.metadata()["noise"] = {{"samples", options.n_samples}, {"seed", options.seed}};

  const auto records = measure_walk(spec, static_cast<int>(t_max), options);
  if (ctx.config().dump_probabilities) dump_probabilities(records, *ctx.config().dump_probabilities);
  const auto ks = momentum_grid(n_k);
  return bloch_table(reconstruct_bloch_field(records, spec.final_params, ks));
}

void emit(const std::string& text, const RunConfig& config, std::ostream& out) {
  if (!config.out) {
    out << text;
    return;
  }
  std::ofstream file(*config.out, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + *config.out + "'");
  file << text;
}

}  // namespace

void run(const RunConfig& config, std::ostream& out) {
  const std::string format = config.format.value_or("csv");
  if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");

  Context ctx(config);
  Table table;
  const std::string& command = config.command;
  if (command == "phase-diagram") {
    table = run_phase_diagram(ctx);
  } else if (command == "spectrum") {
    table = run_spectrum(ctx);
  } else if (command == "quench" || command == "preset") {
    table = run_quench(ctx);
  } else if (command == "fixed-points") {
    table = run_fixed_points(ctx);
  } else if (command == "chern") {
    table = run_chern(ctx);
  } else if (command == "reconstruct") {
    table = run_reconstruct(ctx);
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }

  std::ostringstream text;
  if (format == "csv") {
    write_csv(text, table);
  } else {
    write_json(text, table, ctx.metadata());
  }
  emit(text.str(), config, out);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto report = [&](const std::string& kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
  };
  try {
    const ParsedArgs parsed = parse_command_line(argc, argv);
    if (parsed.help) {
      out << *parsed.help;
      return 0;
    }
    run(resolve_layers(parsed.config), out);
    return 0;
  } catch (const ConfigError& e) {
    report(e.kind(), e.what());
    return 2;
  } catch (const Error& e) {
    report(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    report("InternalError", e.what());
    return 1;
  }
}

}  // namespace ptqw::cli
