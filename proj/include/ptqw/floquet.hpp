#pragma once

#include "ptqw/core.hpp"
#include "ptqw/position_state.hpp"

namespace ptqw {

/// Coin angles (theta1, theta2) and loss probability p of the split-step
/// walk. p is restricted to [0, 1) since gamma = (1-p)^{-1/4} diverges at 1.
class CoinParams {
 public:
  CoinParams(double theta1, double theta2, double loss = 0.0);

  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }
  double loss() const { return loss_; }

  double gamma() const;
  double alpha() const;
  double beta() const;

  bool operator==(const CoinParams&) const = default;

 private:
  double theta1_;
  double theta2_;
  double loss_;
};

/// Pauli coefficients of the rescaled operator
/// U~_k = d0 sigma_0 - i d1 sigma_1 - i d2 sigma_2 - i d3 sigma_3.
struct DVector {
  Complex d0;
  Complex d1;  // i * beta
  Complex d2;
  Complex d3;
};

DVector d_vector(const CoinParams& params, double k);

/// Real scalar d0(k) = alpha [cos 2k cos th1 cos th2 - sin th1 sin th2].
double d0(const CoinParams& params, double k);

/// R(angle) = exp(-i angle sigma_2), a real rotation of the coin.
ComplexMat2 coin_rotation(double angle);
/// Fourier image of the shift that moves |H> to x-1 and |V> to x+1,
/// under psi_k = sum_x e^{-ikx} psi_x: diag(e^{ik}, e^{-ik}).
ComplexMat2 shift_momentum(double k);
/// |+><+| + sqrt(1-p) |-><-|
ComplexMat2 loss_operator(double loss);

/// U~_k assembled from the closed-form d-vector.
ComplexMat2 momentum_operator_closed(const CoinParams& params, double k);
/// gamma * R(th1/2) S_k R(th2/2) M R(th2/2) S_k R(th1/2), multiplied out.
ComplexMat2 momentum_operator_direct(const CoinParams& params, double k);
/// The passive (unrescaled) operator U_k = U~_k / gamma.
ComplexMat2 passive_momentum_operator(const CoinParams& params, double k);

/// Fixes each band's phase so that <-|psi_mu> is real and positive. The
/// resulting frame is smooth in k throughout a gapped PT-unbroken region,
/// which winding numbers and Bloch-vector azimuths rely on. Bands whose
/// |-> component vanishes are left untouched.
void apply_loss_basis_gauge(EigenSystem& bands);

/// Biorthogonal bands of U~_k in the loss-basis gauge.
EigenSystem band_eigensystem(const CoinParams& params, double k);

/// One application of the passive operator U in position space.
PositionState step_position(const PositionState& state, const CoinParams& params);

}  // namespace ptqw
