#include "ptqw/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"

namespace ptqw {

std::vector<double> momentum_grid(int n, double offset) {
  std::vector<double> k(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) k[j] = -kPi + 2.0 * kPi * j / n + offset;
  return k;
}

double wrap_momentum(double k) {
  double w = std::fmod(k + kPi, 2.0 * kPi);
  if (w < 0) w += 2.0 * kPi;
  w -= kPi;
  if (w >= kPi - 1e-10) w -= 2.0 * kPi;
  if (w < -kPi) w = -kPi;
  return w;
}

Complex band_energy(const CoinParams& params, double k) {
  const double d = d0(params, k);
  const double excess = d * d - 1.0;
  if (std::abs(excess) <= 1e-12) {
    std::ostringstream msg;
    msg << "band touching at k=" << k << " (d0=" << d << ")";
    throw ExceptionalPoint(msg.str());
  }
  if (excess < 0) return std::acos(d);
  const double kappa = std::acosh(std::abs(d));
  return d > 0 ? Complex(0.0, kappa) : Complex(kPi, kappa);
}

std::pair<Complex, Complex> quasienergies(const CoinParams& params, double k) {
  const Complex e = band_energy(params, k);
  return {e, -e};
}

double max_d0_squared(const CoinParams& params, int n_k) {
  double best = std::max(std::pow(d0(params, 0.0), 2), std::pow(d0(params, kPi / 2), 2));
  for (double k : momentum_grid(n_k)) best = std::max(best, std::pow(d0(params, k), 2));
  return best;
}

PtPhase pt_classify(const CoinParams& params, int n_k) {
  return max_d0_squared(params, n_k) >= 1.0 ? PtPhase::Broken : PtPhase::Unbroken;
}

BandStructure band_structure(const CoinParams& params, int n_k) {
  BandStructure bs;
  bs.k = momentum_grid(n_k);
  bs.energy.resize(bs.k.size());
  bs.pt_broken.resize(bs.k.size());
  for (std::size_t j = 0; j < bs.k.size(); ++j) {
    const double d = d0(params, bs.k[j]);
    bs.pt_broken[j] = d * d >= 1.0;
    try {
      bs.energy[j] = band_energy(params, bs.k[j]);
    } catch (const ExceptionalPoint&) {
      bs.energy[j] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return bs;
}

namespace {

void require_unbroken(const CoinParams& params, int n_k) {
  if (pt_classify(params, n_k) == PtPhase::Broken) {
    std::ostringstream msg;
    msg << "operator (" << params.theta1() << ", " << params.theta2()
        << ", p=" << params.loss() << ") is PT-broken";
    throw BrokenSymmetry(msg.str());
  }
}

}  // namespace

double zak_phase(const CoinParams& params, Band band, int n_k) {
  require_unbroken(params, n_k);
  const std::vector<double> ks = momentum_grid(n_k);
  std::vector<EigenSystem> frames;
  frames.reserve(ks.size());
  for (double k : ks) {
    band_energy(params, k);  // throws at exceptional points
    frames.push_back(band_eigensystem(params, k));
  }

  // -i sum_j log <chi_j|psi_{j+1}>; the real part is the sum of link phases.
  double phase = 0.0;
  for (std::size_t j = 0; j < frames.size(); ++j) {
    const EigenSystem& here = frames[j];
    const EigenSystem& next = frames[(j + 1) % frames.size()];
    phase += std::arg(here.left_vector(band).dot(next.right_vector(band)));
  }
  return phase;
}

int winding_number(const CoinParams& params, int n_k) {
  const double total = zak_phase(params, Band::Plus, n_k) + zak_phase(params, Band::Minus, n_k);
  const double nu = total / (2.0 * kPi);
  const double rounded = std::round(nu);
  if (std::abs(nu - rounded) >= 0.05) {
    std::ostringstream msg;
    msg << "global Berry phase / 2pi = " << nu << " is not quantized";
    throw NonQuantized(msg.str());
  }
  return static_cast<int>(rounded);
}

std::vector<PhaseDiagramCell> phase_diagram(AngleRange theta1, AngleRange theta2,
                                            double loss, int res1, int res2, int n_k) {
  if (res1 < 1 || res2 < 1) throw InvalidParameter("phase diagram resolution must be positive");
  std::vector<PhaseDiagramCell> cells(static_cast<std::size_t>(res1) * res2);
  detail::parallel_for(res1 * res2, [&](int cell_index) {
    const int i = cell_index / res2;
    const int j = cell_index % res2;
    const double t1 = theta1.lo + (theta1.hi - theta1.lo) * (i + 0.5) / res1;
    const double t2 = theta2.lo + (theta2.hi - theta2.lo) * (j + 0.5) / res2;
    const CoinParams params(t1, t2, loss);
    const double gap = 1.0 - max_d0_squared(params, n_k);
    PhaseDiagramCell cell{t1, t2, std::nullopt, gap <= 0.0, gap};
    if (!cell.pt_broken) {
      try {
        cell.winding = winding_number(params, n_k);
      } catch (const Error&) {
        cell.winding = std::nullopt;
      }
    }
    cells[static_cast<std::size_t>(cell_index)] = cell;
  });
  return cells;
}

}  // namespace ptqw
