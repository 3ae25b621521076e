#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ptqw/position_state.hpp"
#include "ptqw/quench.hpp"

namespace ptqw {

/// Polarization-analysis intensities on one site, relative to unit input
/// flux. Under loss they do not sum to one.
struct SiteProbability {
  double h = 0.0;
  double v = 0.0;
  double l = 0.0;
  double d = 0.0;
};

class SiteProbabilities {
 public:
  SiteProbabilities() = default;
  SiteProbabilities(int x_min, std::vector<SiteProbability> sites)
      : x_min_(x_min), sites_(std::move(sites)) {}

  int x_min() const { return x_min_; }
  int x_max() const { return x_min_ + static_cast<int>(sites_.size()) - 1; }
  const SiteProbability& at(int x) const { return sites_.at(static_cast<std::size_t>(x - x_min_)); }
  SiteProbability& at(int x) { return sites_.at(static_cast<std::size_t>(x - x_min_)); }
  std::span<const SiteProbability> sites() const { return sites_; }

 private:
  int x_min_ = 0;
  std::vector<SiteProbability> sites_;
};

/// Interference measurement on one ordered site pair. Index j-1 holds
/// configuration j of the two-mode states
///   phi_1 = [a1, a2], phi_2 = [b1, -b2], phi_3 = [b1, a2], phi_4 = [a1, b2].
/// `intensity` is |phi_j|^2, the flux entering the {L, D} analysis.
struct PairProbability {
  std::array<double, 4> l{};
  std::array<double, 4> d{};
  std::array<double, 4> intensity{};
};

/// All ordered pairs (x1, x2), x1 != x2, over a window of sites.
class PairProbabilities {
 public:
  PairProbabilities() = default;
  PairProbabilities(int x_min, int width);

  int x_min() const { return x_min_; }
  int x_max() const { return x_min_ + width_ - 1; }
  int width() const { return width_; }
  const PairProbability& at(int x1, int x2) const { return entries_.at(offset(x1, x2)); }
  PairProbability& at(int x1, int x2) { return entries_.at(offset(x1, x2)); }

 private:
  std::size_t offset(int x1, int x2) const {
    return static_cast<std::size_t>(x1 - x_min_) * width_ + static_cast<std::size_t>(x2 - x_min_);
  }
  int x_min_ = 0;
  int width_ = 0;
  std::vector<PairProbability> entries_;
};

/// <psi_{x2}| sigma_j |psi_{x1}> for every (x1, x2) in a window, j = 0..3.
class MatrixElementTable {
 public:
  MatrixElementTable() = default;
  MatrixElementTable(int x_min, int width);

  int x_min() const { return x_min_; }
  int x_max() const { return x_min_ + width_ - 1; }
  int width() const { return width_; }
  const std::array<Complex, 4>& at(int x1, int x2) const { return entries_.at(offset(x1, x2)); }
  std::array<Complex, 4>& at(int x1, int x2) { return entries_.at(offset(x1, x2)); }

 private:
  std::size_t offset(int x1, int x2) const {
    return static_cast<std::size_t>(x1 - x_min_) * width_ + static_cast<std::size_t>(x2 - x_min_);
  }
  int x_min_ = 0;
  int width_ = 0;
  std::vector<std::array<Complex, 4>> entries_;
};

/// P_b(x) = |<b|psi_x>|^2 for b in {H, V, L, D}.
SiteProbabilities onsite_probabilities(const PositionState& state);

/// The four interference configurations for one pair x1 != x2.
PairProbability interference_probabilities(const PositionState& state, int x1, int x2);

/// Every ordered pair over the state's window.
PairProbabilities interference_probabilities(const PositionState& state);

/// Applies the on-site and pairwise reconstruction identities. The window is
/// that of `site`; `pair` must cover it.
MatrixElementTable reconstruct_matrix_elements(const SiteProbabilities& site,
                                               const PairProbabilities& pair);

/// rho'(k,t) = 1/2 sum_j sum_{x1,x2} e^{-ik(x1-x2)} <psi_{x2}|sigma_j|psi_{x1}> sigma_j
ComplexMat2 assemble_hermitian_density(const MatrixElementTable& table, double k);

/// rho = rho' G / Tr[rho' G] with G = sum_mu |chi_mu><chi_mu|. Throws
/// SingularNormalization when Tr[rho' G] <= 1e-12.
ComplexMat2 to_nonhermitian(const ComplexMat2& rho_prime, const EigenSystem& final_bands);

/// Multinomial resampling with n_samples photons per configuration. On-site
/// data uses three whole-lattice configurations (H/V, L/R, D/A analysis), each
/// with a "lost" outcome for 1 - sum p. Each configuration draws from its own
/// stream seeded by (seed, configuration), so output is reproducible.
SiteProbabilities sample_shot_noise(const SiteProbabilities& probabilities, std::int64_t n_samples,
                                    std::uint64_t seed);

/// Per pair and configuration j, independent L/R and D/A analyses of the
/// |phi_j|^2 flux plus a lost outcome.
PairProbabilities sample_shot_noise(const PairProbabilities& probabilities, std::int64_t n_samples,
                                    std::uint64_t seed);

struct ReconstructionOptions {
  /// Photons per configuration; 0 disables shot noise.
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Probabilities recorded at one integer step of the walk.
struct MeasurementRecord {
  int step;
  SiteProbabilities site;
  PairProbabilities pair;
};

/// Runs the walk under the final operator from a site-0 localized coin
/// state and records on-site and interference probabilities at each step
/// 0..t_max, resampled with shot noise when options.n_samples > 0. The
/// initial state must be k-independent (an explicit coin, or a lower band
/// that does not depend on k).
std::vector<MeasurementRecord> measure_walk(const QuenchSpec& spec, int t_max,
                                            const ReconstructionOptions& options = {});

/// Rebuilds n(k,t) from recorded probabilities alone.
BlochField reconstruct_bloch_field(std::span<const MeasurementRecord> records,
                                   const CoinParams& final_params, std::span<const double> ks);

/// measure_walk followed by reconstruction.
BlochField reconstruct_bloch_field(const QuenchSpec& spec, int t_max, std::span<const double> ks,
                                   const ReconstructionOptions& options = {});

/// The localized coin state used to prepare the walk for `spec`. Throws
/// InvalidParameter when the lower-band eigenstate varies with k.
Spinor localized_initial_coin(const QuenchSpec& spec, int n_k = kDefaultMomentumGrid);

}  // namespace ptqw
