#include <random>

#include "doctest.h"
#include "ptqw/spectrum.hpp"
#include "ptqw/walksim.hpp"

using namespace ptqw;

namespace {

PositionState random_state(std::mt19937_64& rng, int x_min, int width) {
  std::normal_distribution<double> g;
  std::vector<Spinor> sites(static_cast<std::size_t>(width));
  for (auto& s : sites) s = Spinor(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  return PositionState(x_min, std::move(sites));
}

}  // namespace

TEST_CASE("position state basics") {
  const PositionState s = PositionState::localized(coin::vertical(), 3);
  CHECK(s.x_min() == 3);
  CHECK(s.x_max() == 3);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK(s.at(4).norm() == 0.0);
  CHECK(s.norm_squared() == 1.0);
}

TEST_CASE("shift moves H left and V right") {
  // theta = 0 and p = 0 leave only the two shifts.
  const CoinParams bare(0.0, 0.0);
  const PositionState h = step_position(PositionState::localized(coin::horizontal()), bare);
  CHECK(h.step() == 1);
  CHECK(std::abs(h.at(-2)(0) - 1.0) < 1e-15);
  CHECK(h.norm_squared() == doctest::Approx(1.0));
  const PositionState v = step_position(PositionState::localized(coin::vertical()), bare);
  CHECK(std::abs(v.at(2)(1) - 1.0) < 1e-15);
}

TEST_CASE("one step in position space is the passive operator in momentum space") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> loss(0.0, 0.9);
  for (int trial = 0; trial < 50; ++trial) {
    const CoinParams params(angle(rng), angle(rng), loss(rng));
    const PositionState state = random_state(rng, -3, 7);
    const PositionState next = step_position(state, params);
    for (double k : {-2.9, -0.4, 0.0, 1.7, 3.0}) {
      const Spinor expected = passive_momentum_operator(params, k) * fourier(state, k);
      CHECK((fourier(next, k) - expected).norm() < 1e-12);
    }
  }
}

TEST_CASE("evolution history") {
  const CoinParams params(-kPi / 2, kPi / 3, 0.36);
  const auto history = evolve(coin::plus(), params, 6);
  REQUIRE(history.size() == 7);
  for (int t = 0; t <= 6; ++t) {
    CHECK(history[t].step() == t);
    CHECK(history[t].x_min() == -2 * t);
    CHECK(history[t].x_max() == 2 * t);
  }
  // Loss only removes probability.
  for (int t = 1; t <= 6; ++t) CHECK(history[t].norm_squared() <= history[t - 1].norm_squared() + 1e-14);
  CHECK(history[6].norm_squared() < 0.99);
  CHECK_THROWS_AS(evolve(coin::plus(), params, -1), InvalidParameter);
}

TEST_CASE("lossless evolution preserves the norm") {
  const auto history = evolve(coin::left_circular(), CoinParams(0.3, 1.2), 20);
  for (const auto& s : history) CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("lossless evolution in position space matches U_k^t") {
  const CoinParams params(-kPi / 2, kPi / 3, 0.2);
  const auto history = evolve(coin::plus(), params, 5);
  for (double k : {-1.0, 0.25, 2.0}) {
    Spinor psi = coin::plus();
    for (int t = 1; t <= 5; ++t) {
      psi = passive_momentum_operator(params, k) * psi;
      CHECK((fourier(history[t], k) - psi).norm() < 1e-12);
    }
  }
}

TEST_CASE("inverse Fourier transform recovers the sites") {
  std::mt19937_64 rng(52);
  const PositionState state = random_state(rng, -5, 11);
  const auto ks = momentum_grid(16);
  std::vector<Spinor> samples;
  for (double k : ks) samples.push_back(fourier(state, k));
  const PositionState back = inverse_fourier(samples, -5, 5, 4);
  CHECK(back.step() == 4);
  for (int x = -5; x <= 5; ++x) CHECK((back.at(x) - state.at(x)).norm() < 1e-12);
}
