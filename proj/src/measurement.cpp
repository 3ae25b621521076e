#include "ptqw/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "ptqw/walksim.hpp"

namespace ptqw {

PairProbabilities::PairProbabilities(int x_min, int width)
    : x_min_(x_min), width_(width), entries_(static_cast<std::size_t>(width) * width) {}

MatrixElementTable::MatrixElementTable(int x_min, int width)
    : x_min_(x_min),
      width_(width),
      entries_(static_cast<std::size_t>(width) * width,
               std::array<Complex, 4>{Complex(0), Complex(0), Complex(0), Complex(0)}) {}

namespace {

double projection(const Spinor& basis_state, const Spinor& phi) {
  return std::norm(basis_state.dot(phi));
}

}  // namespace

SiteProbabilities onsite_probabilities(const PositionState& state) {
  const Spinor l = coin::left_circular();
  const Spinor d = coin::diagonal();
  std::vector<SiteProbability> sites;
  sites.reserve(static_cast<std::size_t>(state.width()));
  for (const Spinor& psi : state.amplitudes()) {
    sites.push_back({std::norm(psi(0)), std::norm(psi(1)), projection(l, psi), projection(d, psi)});
  }
  return SiteProbabilities(state.x_min(), std::move(sites));
}

PairProbability interference_probabilities(const PositionState& state, int x1, int x2) {
  if (x1 == x2) throw InvalidParameter("interference measurement needs two distinct sites");
  const Spinor s1 = state.at(x1);
  const Spinor s2 = state.at(x2);
  const Complex a1 = s1(0), b1 = s1(1), a2 = s2(0), b2 = s2(1);
  const std::array<Spinor, 4> phi{Spinor(a1, a2), Spinor(b1, -b2), Spinor(b1, a2), Spinor(a1, b2)};

  const Spinor l = coin::left_circular();
  const Spinor d = coin::diagonal();
  PairProbability out;
  for (int j = 0; j < 4; ++j) {
    out.l[j] = projection(l, phi[j]);
    out.d[j] = projection(d, phi[j]);
    out.intensity[j] = phi[j].squaredNorm();
  }
  return out;
}

PairProbabilities interference_probabilities(const PositionState& state) {
  PairProbabilities table(state.x_min(), state.width());
  for (int x1 = state.x_min(); x1 <= state.x_max(); ++x1) {
    for (int x2 = state.x_min(); x2 <= state.x_max(); ++x2) {
      if (x1 != x2) table.at(x1, x2) = interference_probabilities(state, x1, x2);
    }
  }
  return table;
}

MatrixElementTable reconstruct_matrix_elements(const SiteProbabilities& site,
                                               const PairProbabilities& pair) {
  const int width = site.x_max() - site.x_min() + 1;
  MatrixElementTable table(site.x_min(), width);

  for (int x = site.x_min(); x <= site.x_max(); ++x) {
    const SiteProbability& p = site.at(x);
    table.at(x, x) = {Complex(p.h + p.v), Complex(2 * p.d - p.h - p.v),
                      Complex(-2 * p.l + p.h + p.v), Complex(p.h - p.v)};
  }

  for (int x1 = site.x_min(); x1 <= site.x_max(); ++x1) {
    for (int x2 = site.x_min(); x2 <= site.x_max(); ++x2) {
      if (x1 == x2) continue;
      const SiteProbability& s1 = site.at(x1);
      const SiteProbability& s2 = site.at(x2);
      const auto& l = pair.at(x1, x2).l;
      const auto& d = pair.at(x1, x2).d;
      const double diag_03 = (s1.h + s2.h - s1.v - s2.v) / 2;
      const double total = (s1.h + s2.h + s1.v + s2.v) / 2;
      const double cross = (s1.v + s2.h - s1.h - s2.v) / 2;
      table.at(x1, x2) = {
          Complex(d[0] - d[1] - diag_03, l[0] - l[1] - diag_03),
          Complex(d[2] + d[3] - total, l[2] + l[3] - total),
          Complex(l[2] - l[3] - cross, d[3] - d[2] + cross),
          Complex(d[0] + d[1] - total, l[0] + l[1] - total),
      };
    }
  }
  return table;
}

ComplexMat2 assemble_hermitian_density(const MatrixElementTable& table, double k) {
  std::array<Complex, 4> coefficients{};
  for (int x1 = table.x_min(); x1 <= table.x_max(); ++x1) {
    for (int x2 = table.x_min(); x2 <= table.x_max(); ++x2) {
      const Complex phase = std::exp(-kI * (k * (x1 - x2)));
      const auto& entry = table.at(x1, x2);
      for (int j = 0; j < 4; ++j) coefficients[j] += phase * entry[j];
    }
  }
  for (auto& c : coefficients) c *= 0.5;
  return pauli_assemble(coefficients);
}

ComplexMat2 to_nonhermitian(const ComplexMat2& rho_prime, const EigenSystem& final_bands) {
  const ComplexMat2 metric = final_bands.left_vector(Band::Plus) * final_bands.left_vector(Band::Plus).adjoint() +
                             final_bands.left_vector(Band::Minus) * final_bands.left_vector(Band::Minus).adjoint();
  const ComplexMat2 numerator = rho_prime * metric;
  const Complex trace = numerator.trace();
  if (!(std::abs(trace) > 1e-12)) {
    std::ostringstream msg;
    msg << "Tr[rho' G] = " << std::abs(trace) << " too small to normalize";
    throw SingularNormalization(msg.str());
  }
  return numerator / trace;
}

namespace {

std::mt19937_64 configuration_stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t config) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(config),
                    static_cast<std::uint32_t>(config >> 32)};
  return std::mt19937_64(seq);
}

// Counts for each outcome in `probs`; the remainder (1 - sum) is "lost" and
// returned as the final entry.
std::vector<std::int64_t> multinomial(std::int64_t n, const std::vector<double>& probs,
                                      std::mt19937_64& rng) {
  std::vector<std::int64_t> counts(probs.size() + 1, 0);
  std::int64_t remaining = n;
  double mass = 1.0;
  for (std::size_t i = 0; i < probs.size() && remaining > 0; ++i) {
    const double p = std::max(0.0, probs[i]);
    const double conditional = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> draw(remaining, conditional);
    counts[i] = draw(rng);
    remaining -= counts[i];
    mass -= p;
  }
  counts.back() = remaining;
  return counts;
}

void require_samples(std::int64_t n_samples) {
  if (n_samples < 1) throw InvalidParameter("shot noise needs at least one sample");
}

constexpr std::uint64_t kSiteTag = 1;
constexpr std::uint64_t kPairTag = 2;

}  // namespace

SiteProbabilities sample_shot_noise(const SiteProbabilities& probabilities, std::int64_t n_samples,
                                    std::uint64_t seed) {
  require_samples(n_samples);
  const auto sites = probabilities.sites();
  const double n = static_cast<double>(n_samples);
  SiteProbabilities out = probabilities;

  // Configuration 0: H/V analysis, 1: L/R, 2: D/A. Outcomes are laid out as
  // (site 0 first, site 0 second, site 1 first, ...), then lost.
  for (std::uint64_t config = 0; config < 3; ++config) {
    std::vector<double> probs;
    probs.reserve(2 * sites.size());
    for (const SiteProbability& s : sites) {
      const double flux = s.h + s.v;
      switch (config) {
        case 0: probs.insert(probs.end(), {s.h, s.v}); break;
        case 1: probs.insert(probs.end(), {s.l, std::max(0.0, flux - s.l)}); break;
        default: probs.insert(probs.end(), {s.d, std::max(0.0, flux - s.d)}); break;
      }
    }
    auto rng = configuration_stream(seed, kSiteTag, config);
    const auto counts = multinomial(n_samples, probs, rng);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      SiteProbability& target = out.at(probabilities.x_min() + static_cast<int>(i));
      const double first = static_cast<double>(counts[2 * i]) / n;
      const double second = static_cast<double>(counts[2 * i + 1]) / n;
      switch (config) {
        case 0: target.h = first; target.v = second; break;
        case 1: target.l = first; break;
        default: target.d = first; break;
      }
    }
  }
  return out;
}

PairProbabilities sample_shot_noise(const PairProbabilities& probabilities, std::int64_t n_samples,
                                    std::uint64_t seed) {
  require_samples(n_samples);
  const double n = static_cast<double>(n_samples);
  PairProbabilities out = probabilities;
  const int width = probabilities.width();

  detail::parallel_for(width * width, [&](int cell) {
    const int x1 = probabilities.x_min() + cell / width;
    const int x2 = probabilities.x_min() + cell % width;
    if (x1 == x2) return;
    const PairProbability& p = probabilities.at(x1, x2);
    PairProbability& target = out.at(x1, x2);
    for (int j = 0; j < 4; ++j) {
      const std::uint64_t base = (static_cast<std::uint64_t>(cell) * 4 + j) * 2;
      auto rng_l = configuration_stream(seed, kPairTag, base);
      const auto l = multinomial(n_samples, {p.l[j], std::max(0.0, p.intensity[j] - p.l[j])}, rng_l);
      auto rng_d = configuration_stream(seed, kPairTag, base + 1);
      const auto d = multinomial(n_samples, {p.d[j], std::max(0.0, p.intensity[j] - p.d[j])}, rng_d);
      target.l[j] = static_cast<double>(l[0]) / n;
      target.d[j] = static_cast<double>(d[0]) / n;
      target.intensity[j] = static_cast<double>(l[0] + l[1]) / n;
    }
  });
  return out;
}

Spinor localized_initial_coin(const QuenchSpec& spec, int n_k) {
  if (const auto* explicit_state = std::get_if<Spinor>(&spec.initial_state)) return *explicit_state;
  const Spinor reference = initial_spinor(spec, 0.0);
  for (double k : momentum_grid(n_k)) {
    const double overlap = std::abs(reference.dot(initial_spinor(spec, k)));
    if (overlap < 1.0 - 1e-10) {
      std::ostringstream msg;
      msg << "lower-band eigenstate of the initial operator varies with k (overlap " << overlap
          << " at k=" << k << "); it cannot be prepared on a single site";
      throw InvalidParameter(msg.str());
    }
  }
  return reference;
}

std::vector<MeasurementRecord> measure_walk(const QuenchSpec& spec, int t_max,
                                            const ReconstructionOptions& options) {
  if (t_max < 0) throw InvalidParameter("t_max must be non-negative");
  const Spinor coin = localized_initial_coin(spec);
  std::vector<MeasurementRecord> records;
  for (const PositionState& state : evolve(coin, spec.final_params, t_max)) {
    MeasurementRecord record{state.step(), onsite_probabilities(state), interference_probabilities(state)};
    if (options.n_samples > 0) {
      const std::uint64_t step_seed =
          options.seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(state.step() + 1));
      record.site = sample_shot_noise(record.site, options.n_samples, step_seed);
      record.pair = sample_shot_noise(record.pair, options.n_samples, step_seed);
    }
    records.push_back(std::move(record));
  }
  return records;
}

BlochField reconstruct_bloch_field(std::span<const MeasurementRecord> records,
                                   const CoinParams& final_params, std::span<const double> ks) {
  std::vector<MatrixElementTable> tables;
  tables.reserve(records.size());
  BlochField field;
  for (const MeasurementRecord& record : records) {
    tables.push_back(reconstruct_matrix_elements(record.site, record.pair));
    field.t.push_back(record.step);
  }
  field.k.assign(ks.begin(), ks.end());
  field.regime.resize(ks.size());
  field.n.resize(ks.size() * tables.size());
  detail::parallel_for(static_cast<int>(ks.size()), [&](int i) {
    const double k = ks[i];
    field.regime[i] = band_energy(final_params, k).imag() == 0.0 ? Regime::RealE : Regime::ImaginaryE;
    const EigenSystem bands = band_eigensystem(final_params, k);
    for (std::size_t j = 0; j < tables.size(); ++j) {
      const ComplexMat2 rho = to_nonhermitian(assemble_hermitian_density(tables[j], k), bands);
      field.n[i * tables.size() + j] = bloch_from_density(rho, bands);
    }
  });
  return field;
}

BlochField reconstruct_bloch_field(const QuenchSpec& spec, int t_max, std::span<const double> ks,
                                   const ReconstructionOptions& options) {
  const auto records = measure_walk(spec, t_max, options);
  return reconstruct_bloch_field(records, spec.final_params, ks);
}

}  // namespace ptqw
