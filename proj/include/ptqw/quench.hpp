#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ptqw/floquet.hpp"
#include "ptqw/spectrum.hpp"

namespace ptqw {

/// Start in |psi^i_{k,-}>, the lower band of the initial operator.
struct EigenstateLowerBand {};

/// Either the lower-band eigenstate of the initial operator or an explicit
/// k-independent coin spinor.
using InitialState = std::variant<EigenstateLowerBand, Spinor>;

struct QuenchSpec {
  CoinParams initial_params;
  CoinParams final_params;
  InitialState initial_state = EigenstateLowerBand{};
};

/// c_mu = <chi^f_{k,mu}|psi^i_{k,-}>
struct OverlapPair {
  Complex plus;
  Complex minus;
};

enum class Regime { RealE, ImaginaryE };

const char* to_string(Regime r);

/// Everything time-independent about one momentum sector of a quench.
struct Sector {
  double k;
  Spinor initial;       // |psi^i_{k,-}>
  EigenSystem bands;    // final operator, loss-basis gauge
  OverlapPair c;
  Regime regime;
  /// Half the band splitting that drives the dynamics: real E in (0, pi), or
  /// i*kappa (kappa > 0) in the broken regime. Any common pi in the
  /// eigenphases is dropped since it cancels in rho.
  Complex energy;
};

/// |psi^i_{k,-}> for the spec's initial-state choice.
Spinor initial_spinor(const QuenchSpec& spec, double k);

/// Max over the grid of the eigen-residual |U^i_k psi - <U^i_k> psi| / |psi|
/// of an explicit initial coin state; zero for EigenstateLowerBand.
double initial_state_eigen_residual(const QuenchSpec& spec, int n_k = kDefaultMomentumGrid);

/// True when the initial state is a lower-band eigenstate of U^i_k for all
/// grid k to within 1e-8.
bool initial_state_is_eigenstate(const QuenchSpec& spec, int n_k = kDefaultMomentumGrid);

/// Throws ExceptionalPoint when the final operator has a band touching at k.
Sector make_sector(const QuenchSpec& spec, double k);

OverlapPair overlaps(const QuenchSpec& spec, double k);

/// n(k,t) from the closed forms in c_+-, for real or imaginary E.
Vec3 bloch_vector(const Sector& sector, double t);
Vec3 bloch_vector(const QuenchSpec& spec, double k, double t);

/// tau_i = sum_{mu,nu} |psi_mu> sigma_i^{mu nu} <chi_nu|, i = 0..3.
std::array<ComplexMat2, 4> dressed_paulis(const EigenSystem& bands);

/// rho(k,t) = |psi_k(t)><chi_k(t)| / <chi_k(t)|psi_k(t)>. Throws
/// SingularNormalization when the denominator drops below 1e-12 relative to
/// the coefficient scale.
ComplexMat2 density_matrix(const Sector& sector, double t);
ComplexMat2 density_matrix(const QuenchSpec& spec, double k, double t);

/// n_i = Tr[rho tau_i]; returns the real parts.
Vec3 bloch_from_density(const ComplexMat2& rho, const EigenSystem& bands);

enum class FixedPointKind { CMinusZero, CPlusZero };

const char* to_string(FixedPointKind kind);

struct FixedPoint {
  double k;
  FixedPointKind kind;
  /// |c|^2 / (|c_+|^2 + |c_-|^2) at k.
  double residual;
};

/// Momenta in [-pi, pi) where c_+ or c_- vanishes, refined by golden-section
/// search on the normalized |c|^2. Only real-E sectors qualify, so a fully
/// broken final operator yields an empty list.
std::vector<FixedPoint> find_fixed_points(const QuenchSpec& spec, int n_k = kDefaultMomentumGrid);

/// t0 = pi / E^f_k. Throws ImaginaryEnergy when E^f_k is not real.
double oscillation_period(const QuenchSpec& spec, double k);

struct BlochField {
  std::vector<double> k;
  std::vector<double> t;
  std::vector<Regime> regime;  // per k
  std::vector<Vec3> n;         // k-major: n[i * t.size() + j]

  const Vec3& at(std::size_t ik, std::size_t it) const { return n[ik * t.size() + it]; }
};

/// n(k,t) on the product grid via the closed forms.
BlochField bloch_field(const QuenchSpec& spec, std::span<const double> ks,
                       std::span<const double> ts);

/// n_t evenly spaced times on [0, t_max] inclusive.
std::vector<double> time_grid(double t_max, int n_t);

}  // namespace ptqw
