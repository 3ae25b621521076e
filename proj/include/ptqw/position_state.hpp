#pragma once

#include <span>
#include <vector>

#include "ptqw/core.hpp"

namespace ptqw {

/// Coin spinors on a contiguous window of lattice sites [x_min, x_max].
/// Sites outside the window have zero amplitude. Norms are physical: under
/// loss they decay below one.
class PositionState {
 public:
  PositionState() = default;
  PositionState(int x_min, std::vector<Spinor> amplitudes, int step = 0);

  static PositionState localized(const Spinor& coin_state, int x = 0);

  int x_min() const { return x_min_; }
  int x_max() const { return x_min_ + width() - 1; }
  int width() const { return static_cast<int>(amplitudes_.size()); }
  int step() const { return step_; }
  bool contains(int x) const { return x >= x_min() && x <= x_max(); }

  /// Amplitude at site x; zero outside the window.
  Spinor at(int x) const;
  std::span<const Spinor> amplitudes() const { return amplitudes_; }

  double norm_squared() const;

 private:
  int x_min_ = 0;
  std::vector<Spinor> amplitudes_;
  int step_ = 0;
};

}  // namespace ptqw
