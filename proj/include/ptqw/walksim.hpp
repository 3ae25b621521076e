#pragma once

#include <span>
#include <vector>

#include "ptqw/floquet.hpp"
#include "ptqw/position_state.hpp"

namespace ptqw {

/// States at steps 0..t_max, starting from `initial_coin` on site 0.
std::vector<PositionState> evolve(const Spinor& initial_coin, const CoinParams& params, int t_max);

/// psi_k = sum_x e^{-ikx} psi_x (unnormalized).
Spinor fourier(const PositionState& state, double k);

/// Inverse of `fourier` from samples on momentum_grid(samples.size()),
/// recovering sites [x_min, x_max]. Exact when the state's support fits in
/// fewer sites than samples.
PositionState inverse_fourier(std::span<const Spinor> samples, int x_min, int x_max, int step = 0);

}  // namespace ptqw
