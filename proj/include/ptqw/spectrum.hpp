#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ptqw/floquet.hpp"

namespace ptqw {

inline constexpr int kDefaultMomentumGrid = 512;

/// Uniform grid of n points over [-pi, pi), optionally shifted by `offset`.
std::vector<double> momentum_grid(int n, double offset = 0.0);

/// Maps k into [-pi, pi); values within 1e-10 of +pi snap to -pi.
double wrap_momentum(double k);

/// Band energy E_k with eps_+ = +E, eps_- = -E. Real in (0, pi) when
/// d0^2 < 1; i*acosh(d0) when d0 > 1; pi + i*acosh(-d0) when d0 < -1. The
/// imaginary part is never negative, so eps_+ is the amplified band.
/// Throws ExceptionalPoint when |d0^2 - 1| <= 1e-12.
Complex band_energy(const CoinParams& params, double k);

/// (eps_+, eps_-) = (E, -E).
std::pair<Complex, Complex> quasienergies(const CoinParams& params, double k);

enum class PtPhase { Unbroken, Broken };

/// max_k d0(k)^2 over a grid of n_k points plus the analytic extrema at
/// cos 2k = +-1.
double max_d0_squared(const CoinParams& params, int n_k);

PtPhase pt_classify(const CoinParams& params, int n_k = kDefaultMomentumGrid);

struct BandStructure {
  std::vector<double> k;
  std::vector<Complex> energy;
  std::vector<bool> pt_broken;
};

/// Per-k energies on the default grid. Exceptional momenta get NaN energy.
BandStructure band_structure(const CoinParams& params, int n_k = kDefaultMomentumGrid);

/// Generalized Zak phase of one band, accumulated link by link around the
/// Brillouin zone in the loss-basis gauge. The value is not reduced mod
/// 2 pi: the sum over both bands carries the winding number.
double zak_phase(const CoinParams& params, Band band, int n_k = kDefaultMomentumGrid);

/// nu = (phi_Z+ + phi_Z-) / 2 pi, rounded. Throws NonQuantized when the
/// rounding residual is >= 0.05, BrokenSymmetry outside the unbroken regime.
int winding_number(const CoinParams& params, int n_k = kDefaultMomentumGrid);

struct PhaseDiagramCell {
  double theta1;
  double theta2;
  std::optional<int> winding;
  bool pt_broken;
  /// min_k (1 - d0(k)^2); negative when some momentum is PT-broken.
  double min_gap;
};

struct AngleRange {
  double lo;
  double hi;
};

/// Winding numbers on a res1 x res2 grid of cell centres, theta1-major.
/// Cells that are broken, exceptional, or fail to quantize carry no winding.
std::vector<PhaseDiagramCell> phase_diagram(AngleRange theta1, AngleRange theta2,
                                            double loss, int res1, int res2,
                                            int n_k = kDefaultMomentumGrid);

}  // namespace ptqw
