#include "ptqw/quench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"

namespace ptqw {

const char* to_string(Regime r) { return r == Regime::RealE ? "real" : "imaginary"; }

const char* to_string(FixedPointKind kind) {
  return kind == FixedPointKind::CMinusZero ? "c_minus_zero" : "c_plus_zero";
}

Spinor initial_spinor(const QuenchSpec& spec, double k) {
  if (const auto* explicit_state = std::get_if<Spinor>(&spec.initial_state)) {
    return *explicit_state;
  }
  const double d = d0(spec.initial_params, k);
  if (d * d >= 1.0) {
    std::ostringstream msg;
    msg << "initial operator is PT-broken at k=" << k << "; lower band undefined";
    throw BrokenSymmetry(msg.str());
  }
  return eig_biorthogonal(momentum_operator_closed(spec.initial_params, k))
      .right_vector(Band::Minus);
}

double initial_state_eigen_residual(const QuenchSpec& spec, int n_k) {
  const auto* explicit_state = std::get_if<Spinor>(&spec.initial_state);
  if (explicit_state == nullptr) return 0.0;
  const Spinor& psi = *explicit_state;
  double worst = 0.0;
  for (double k : momentum_grid(n_k)) {
    const ComplexMat2 u = momentum_operator_closed(spec.initial_params, k);
    const Spinor image = u * psi;
    const Complex rayleigh = psi.dot(image) / psi.squaredNorm();
    worst = std::max(worst, (image - rayleigh * psi).norm() / psi.norm());
  }
  return worst;
}

bool initial_state_is_eigenstate(const QuenchSpec& spec, int n_k) {
  return initial_state_eigen_residual(spec, n_k) < 1e-8;
}

Sector make_sector(const QuenchSpec& spec, double k) {
  Sector s;
  s.k = k;
  s.initial = initial_spinor(spec, k);
  const Complex e = band_energy(spec.final_params, k);
  s.bands = band_eigensystem(spec.final_params, k);
  s.c = OverlapPair{s.bands.left_vector(Band::Plus).dot(s.initial),
                    s.bands.left_vector(Band::Minus).dot(s.initial)};
  if (e.imag() == 0.0) {
    s.regime = Regime::RealE;
    s.energy = e.real();
  } else {
    s.regime = Regime::ImaginaryE;
    s.energy = Complex(0.0, e.imag());
  }
  return s;
}

OverlapPair overlaps(const QuenchSpec& spec, double k) { return make_sector(spec, k).c; }

Vec3 bloch_vector(const Sector& sector, double t) {
  const Complex cp = sector.c.plus;
  const Complex cm = sector.c.minus;
  if (std::norm(cp) + std::norm(cm) == 0.0) {
    throw SingularNormalization("initial state has no overlap with either final band");
  }

  if (sector.regime == Regime::RealE) {
    const double e = sector.energy.real();
    const double n0 = std::norm(cp) + std::norm(cm);
    const Complex z = std::conj(cm) * cp * std::exp(-2.0 * kI * e * t);
    return Vec3(2.0 * z.real() / n0, -2.0 * z.imag() / n0, (std::norm(cp) - std::norm(cm)) / n0);
  }

  // Imaginary E = i kappa. Weights |c_+| e^{kappa t}, |c_-| e^{-kappa t} are
  // rescaled by the larger one so long times neither overflow nor underflow.
  const double kappa = sector.energy.imag();
  const double log_plus = std::log(std::abs(cp)) + kappa * t;
  const double log_minus = std::log(std::abs(cm)) - kappa * t;
  const double shift = std::max(log_plus, log_minus);
  const double wp = std::exp(log_plus - shift);
  const double wm = std::exp(log_minus - shift);
  const double n0 = wp * wp + wm * wm;
  const double phase = std::arg(std::conj(cm) * cp);
  return Vec3(2.0 * wp * wm * std::cos(phase) / n0, -2.0 * wp * wm * std::sin(phase) / n0,
              (wp * wp - wm * wm) / n0);
}

Vec3 bloch_vector(const QuenchSpec& spec, double k, double t) {
  return bloch_vector(make_sector(spec, k), t);
}

std::array<ComplexMat2, 4> dressed_paulis(const EigenSystem& bands) {
  std::array<ComplexMat2, 4> tau;
  for (int i = 0; i < 4; ++i) {
    tau[i].setZero();
    for (int mu = 0; mu < 2; ++mu) {
      for (int nu = 0; nu < 2; ++nu) {
        const Complex s = pauli(i)(mu, nu);
        if (s != Complex(0.0)) tau[i] += s * bands.right[mu] * bands.left[nu].adjoint();
      }
    }
  }
  return tau;
}

ComplexMat2 density_matrix(const Sector& sector, double t) {
  // Time-evolved amplitudes a_mu = c_mu e^{-i eps_mu t} with eps_+- = +-E. In
  // the imaginary regime both are scaled by e^{-kappa t}, which cancels.
  Complex ap;
  Complex am;
  if (sector.regime == Regime::RealE) {
    const double e = sector.energy.real();
    ap = sector.c.plus * std::exp(-kI * e * t);
    am = sector.c.minus * std::exp(kI * e * t);
  } else {
    ap = sector.c.plus;
    am = sector.c.minus * std::exp(-2.0 * sector.energy.imag() * t);
  }
  const Spinor psi = ap * sector.bands.right_vector(Band::Plus) +
                     am * sector.bands.right_vector(Band::Minus);
  const Spinor chi = ap * sector.bands.left_vector(Band::Plus) +
                     am * sector.bands.left_vector(Band::Minus);
  const Complex norm = chi.dot(psi);
  const double scale = std::norm(sector.c.plus) + std::norm(sector.c.minus);
  if (!(std::abs(norm) > 1e-12 * scale) || scale == 0.0) {
    throw SingularNormalization("<chi_k(t)|psi_k(t)> vanishes");
  }
  return psi * chi.adjoint() / norm;
}

ComplexMat2 density_matrix(const QuenchSpec& spec, double k, double t) {
  return density_matrix(make_sector(spec, k), t);
}

Vec3 bloch_from_density(const ComplexMat2& rho, const EigenSystem& bands) {
  const auto tau = dressed_paulis(bands);
  return Vec3((rho * tau[1]).trace().real(), (rho * tau[2]).trace().real(),
              (rho * tau[3]).trace().real());
}

namespace {

constexpr double kNotAFixedPoint = std::numeric_limits<double>::infinity();

// Normalized |c_mu|^2, or +inf where the sector is exceptional or not real.
double vanishing_measure(const QuenchSpec& spec, double k, FixedPointKind kind) {
  try {
    const Sector s = make_sector(spec, k);
    if (s.regime != Regime::RealE) return kNotAFixedPoint;
    const double total = std::norm(s.c.plus) + std::norm(s.c.minus);
    const Complex c = kind == FixedPointKind::CPlusZero ? s.c.plus : s.c.minus;
    return std::norm(c) / total;
  } catch (const ExceptionalPoint&) {
    return kNotAFixedPoint;
  }
}

template <typename F>
double golden_section_minimum(F&& f, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-12) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

double circular_distance(double a, double b) {
  const double d = std::abs(wrap_momentum(a - b));
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace

std::vector<FixedPoint> find_fixed_points(const QuenchSpec& spec, int n_k) {
  const std::vector<double> ks = momentum_grid(n_k);
  const double dk = 2.0 * kPi / n_k;
  std::vector<FixedPoint> found;

  for (FixedPointKind kind : {FixedPointKind::CPlusZero, FixedPointKind::CMinusZero}) {
    std::vector<double> f(ks.size());
    detail::parallel_for(n_k, [&](int j) { f[j] = vanishing_measure(spec, ks[j], kind); });

    for (int j = 0; j < n_k; ++j) {
      const double left = f[(j + n_k - 1) % n_k];
      const double right = f[(j + 1) % n_k];
      if (!(f[j] < left && f[j] <= right && f[j] < 0.25)) continue;

      auto measure = [&](double k) { return vanishing_measure(spec, k, kind); };
      const double k_star = golden_section_minimum(measure, ks[j] - dk, ks[j] + dk);
      const double residual = measure(k_star);
      if (residual < 1e-10) found.push_back({wrap_momentum(k_star), kind, residual});
    }
  }

  std::sort(found.begin(), found.end(),
            [](const FixedPoint& a, const FixedPoint& b) { return a.k < b.k; });
  std::vector<FixedPoint> unique;
  for (const FixedPoint& fp : found) {
    const bool duplicate = std::any_of(unique.begin(), unique.end(), [&](const FixedPoint& u) {
      return u.kind == fp.kind && circular_distance(u.k, fp.k) < 1e-8;
    });
    if (!duplicate) unique.push_back(fp);
  }
  return unique;
}

double oscillation_period(const QuenchSpec& spec, double k) {
  const Complex e = band_energy(spec.final_params, k);
  if (e.imag() != 0.0) {
    std::ostringstream msg;
    msg << "E^f at k=" << k << " is " << e << ", not real";
    throw ImaginaryEnergy(msg.str());
  }
  return kPi / e.real();
}

BlochField bloch_field(const QuenchSpec& spec, std::span<const double> ks,
                       std::span<const double> ts) {
  BlochField field;
  field.k.assign(ks.begin(), ks.end());
  field.t.assign(ts.begin(), ts.end());
  field.regime.resize(ks.size());
  field.n.resize(ks.size() * ts.size());
  detail::parallel_for(static_cast<int>(ks.size()), [&](int i) {
    const Sector s = make_sector(spec, ks[i]);
    field.regime[i] = s.regime;
    for (std::size_t j = 0; j < ts.size(); ++j) field.n[i * ts.size() + j] = bloch_vector(s, ts[j]);
  });
  return field;
}

std::vector<double> time_grid(double t_max, int n_t) {
  if (n_t < 1) throw InvalidParameter("time grid needs at least one sample");
  std::vector<double> t(static_cast<std::size_t>(n_t));
  for (int j = 0; j < n_t; ++j) t[j] = n_t == 1 ? 0.0 : t_max * j / (n_t - 1);
  return t;
}

}  // namespace ptqw
