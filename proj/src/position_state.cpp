#include "ptqw/position_state.hpp"

namespace ptqw {

PositionState::PositionState(int x_min, std::vector<Spinor> amplitudes, int step)
    : x_min_(x_min), amplitudes_(std::move(amplitudes)), step_(step) {}

PositionState PositionState::localized(const Spinor& coin_state, int x) {
  return PositionState(x, {coin_state}, 0);
}

Spinor PositionState::at(int x) const {
  if (!contains(x)) return Spinor::Zero();
  return amplitudes_[static_cast<std::size_t>(x - x_min_)];
}

double PositionState::norm_squared() const {
  double total = 0.0;
  for (const auto& s : amplitudes_) total += s.squaredNorm();
  return total;
}

}  // namespace ptqw
