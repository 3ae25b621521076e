#include "ptqw/walksim.hpp"

#include <cmath>

#include "ptqw/spectrum.hpp"

namespace ptqw {

std::vector<PositionState> evolve(const Spinor& initial_coin, const CoinParams& params, int t_max) {
  if (t_max < 0) throw InvalidParameter("t_max must be non-negative");
  std::vector<PositionState> history;
  history.reserve(static_cast<std::size_t>(t_max) + 1);
  history.push_back(PositionState::localized(initial_coin));
  for (int t = 0; t < t_max; ++t) history.push_back(step_position(history.back(), params));
  return history;
}

Spinor fourier(const PositionState& state, double k) {
  Spinor out = Spinor::Zero();
  for (int x = state.x_min(); x <= state.x_max(); ++x) {
    out += std::exp(-kI * (k * x)) * state.at(x);
  }
  return out;
}

PositionState inverse_fourier(std::span<const Spinor> samples, int x_min, int x_max, int step) {
  const int n = static_cast<int>(samples.size());
  const std::vector<double> ks = momentum_grid(n);
  std::vector<Spinor> sites(static_cast<std::size_t>(x_max - x_min + 1), Spinor::Zero());
  for (int x = x_min; x <= x_max; ++x) {
    Spinor acc = Spinor::Zero();
    for (int j = 0; j < n; ++j) acc += std::exp(kI * (ks[j] * x)) * samples[j];
    sites[x - x_min] = acc / static_cast<double>(n);
  }
  return PositionState(x_min, std::move(sites), step);
}

}  // namespace ptqw
