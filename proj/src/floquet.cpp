#include "ptqw/floquet.hpp"

#include <cmath>
#include <sstream>

namespace ptqw {

CoinParams::CoinParams(double theta1, double theta2, double loss)
    : theta1_(theta1), theta2_(theta2), loss_(loss) {
  if (!std::isfinite(theta1) || !std::isfinite(theta2)) {
    throw InvalidParameter("coin angles must be finite");
  }
  if (!(loss >= 0.0 && loss < 1.0)) {
    std::ostringstream msg;
    msg << "loss probability p=" << loss << " outside [0, 1)";
    throw InvalidParameter(msg.str());
  }
}

double CoinParams::gamma() const { return std::pow(1.0 - loss_, -0.25); }
double CoinParams::alpha() const { return 0.5 * gamma() * (1.0 + std::sqrt(1.0 - loss_)); }
double CoinParams::beta() const { return 0.5 * gamma() * (1.0 - std::sqrt(1.0 - loss_)); }

double d0(const CoinParams& params, double k) {
  const double t1 = params.theta1();
  const double t2 = params.theta2();
  return params.alpha() *
         (std::cos(2 * k) * std::cos(t1) * std::cos(t2) - std::sin(t1) * std::sin(t2));
}

DVector d_vector(const CoinParams& params, double k) {
  const double a = params.alpha();
  const double t1 = params.theta1();
  const double t2 = params.theta2();
  const double c2k = std::cos(2 * k);
  return DVector{
      .d0 = d0(params, k),
      .d1 = kI * params.beta(),
      .d2 = a * (c2k * std::cos(t2) * std::sin(t1) + std::cos(t1) * std::sin(t2)),
      .d3 = -a * std::sin(2 * k) * std::cos(t2),
  };
}

ComplexMat2 coin_rotation(double angle) {
  ComplexMat2 r;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  r << c, -s, s, c;
  return r;
}

ComplexMat2 shift_momentum(double k) {
  ComplexMat2 s = ComplexMat2::Zero();
  s(0, 0) = std::exp(kI * k);
  s(1, 1) = std::exp(-kI * k);
  return s;
}

ComplexMat2 loss_operator(double loss) {
  const Spinor p = coin::plus();
  const Spinor m = coin::minus();
  return p * p.adjoint() + std::sqrt(1.0 - loss) * (m * m.adjoint());
}

ComplexMat2 momentum_operator_closed(const CoinParams& params, double k) {
  const DVector d = d_vector(params, k);
  return pauli_assemble({d.d0, -kI * d.d1, -kI * d.d2, -kI * d.d3});
}

ComplexMat2 momentum_operator_direct(const CoinParams& params, double k) {
  const ComplexMat2 r1 = coin_rotation(0.5 * params.theta1());
  const ComplexMat2 r2 = coin_rotation(0.5 * params.theta2());
  const ComplexMat2 s = shift_momentum(k);
  const ComplexMat2 m = loss_operator(params.loss());
  return params.gamma() * (r1 * s * r2 * m * r2 * s * r1);
}

ComplexMat2 passive_momentum_operator(const CoinParams& params, double k) {
  return momentum_operator_closed(params, k) / params.gamma();
}

void apply_loss_basis_gauge(EigenSystem& bands) {
  const Spinor minus = coin::minus();
  for (Band b : {Band::Plus, Band::Minus}) {
    const Complex component = minus.dot(bands.right_vector(b));
    const double magnitude = std::abs(component);
    if (magnitude < 1e-14) continue;
    bands.rephase(b, magnitude / component);
  }
}

EigenSystem band_eigensystem(const CoinParams& params, double k) {
  EigenSystem bands = eig_biorthogonal(momentum_operator_closed(params, k));
  apply_loss_basis_gauge(bands);
  return bands;
}

namespace {

void apply_coin(std::vector<Spinor>& sites, const ComplexMat2& op) {
  for (auto& s : sites) s = op * s;
}

// |H> hops to x-1, |V> to x+1; the window grows by one site on each side.
std::vector<Spinor> apply_shift(const std::vector<Spinor>& sites) {
  std::vector<Spinor> out(sites.size() + 2, Spinor::Zero());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    out[i](0) += sites[i](0);
    out[i + 2](1) += sites[i](1);
  }
  return out;
}

}  // namespace

PositionState step_position(const PositionState& state, const CoinParams& params) {
  const ComplexMat2 r1 = coin_rotation(0.5 * params.theta1());
  const ComplexMat2 r2 = coin_rotation(0.5 * params.theta2());
  const ComplexMat2 middle = r2 * loss_operator(params.loss()) * r2;

  std::vector<Spinor> sites(state.amplitudes().begin(), state.amplitudes().end());
  apply_coin(sites, r1);
  sites = apply_shift(sites);
  apply_coin(sites, middle);
  sites = apply_shift(sites);
  apply_coin(sites, r1);
  return PositionState(state.x_min() - 2, std::move(sites), state.step() + 1);
}

}  // namespace ptqw
