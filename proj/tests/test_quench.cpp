#include <random>

#include "doctest.h"
#include "ptqw/quench.hpp"

using namespace ptqw;

namespace {

double alpha36() { return CoinParams(0.0, 0.0, 0.36).alpha(); }

QuenchSpec fig3a() { return {CoinParams(kPi / 4, -kPi / 2), CoinParams(-kPi / 2, kPi / 3)}; }

QuenchSpec fig3b() {
  return {CoinParams(kPi / 4, -kPi / 2, 0.36),
          CoinParams(-kPi / 2, std::asin(std::cos(kPi / 6) / alpha36()), 0.36)};
}

QuenchSpec fig4() {
  return {CoinParams(kPi / 4, -kPi / 2, 0.36),
          CoinParams(-kPi / 2, (kPi - std::acos(1.0 / alpha36())) / 2, 0.36), Spinor(coin::plus())};
}

QuenchSpec fig6() {
  return {CoinParams(kPi / 4, -kPi / 2, 0.36), CoinParams(7 * kPi / 25, -9 * kPi / 20, 0.36)};
}

QuenchSpec random_unbroken_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> loss(0.0, 0.5);
  while (true) {
    const double p = loss(rng);
    const CoinParams initial(angle(rng), angle(rng), p);
    const CoinParams final(angle(rng), angle(rng), p);
    if (1.0 - max_d0_squared(initial, 256) > 0.05 && 1.0 - max_d0_squared(final, 256) > 0.05) {
      return {initial, final};
    }
  }
}

// n(k, t) at integer t by stepping U~^t psi and expanding in the final
// eigenbasis: a = V^{-1} psi(t), n_i = a^dagger sigma_i a / a^dagger a.
Vec3 stepped_bloch_vector(const QuenchSpec& spec, double k, int t) {
  const Sector sector = make_sector(spec, k);
  const ComplexMat2 u = momentum_operator_direct(spec.final_params, k);
  Spinor psi = sector.initial;
  for (int s = 0; s < t; ++s) psi = u * psi;
  ComplexMat2 v;
  v << sector.bands.right[0], sector.bands.right[1];
  const Spinor a = v.inverse() * psi;
  const double norm = a.squaredNorm();
  return Vec3((a.adjoint() * pauli(1) * a)(0).real() / norm, (a.adjoint() * pauli(2) * a)(0).real() / norm,
              (a.adjoint() * pauli(3) * a)(0).real() / norm);
}

void check_fixed_points(const std::vector<FixedPoint>& found,
                        const std::vector<std::pair<double, FixedPointKind>>& expected, double tol) {
  REQUIRE(found.size() == expected.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(found[i].k / kPi - expected[i].first) < tol);
    CHECK(found[i].kind == expected[i].second);
    CHECK(found[i].residual < 1e-10);
  }
}

}  // namespace

TEST_CASE("initial lower-band state of the lossy initial operator") {
  // (0.7606, 0.6492i) to four decimals.
  Spinor psi = initial_spinor(fig3b(), 0.4);
  psi *= std::abs(psi(0)) / psi(0);
  CHECK(std::abs(psi(0) - 0.7606) < 5e-5);
  CHECK(std::abs(psi(1) - Complex(0.0, 0.6492)) < 5e-5);
  CHECK(std::abs(psi(0) - 0.760636194) < 1e-9);
  CHECK(std::abs(psi(1) - Complex(0.0, 0.649178388)) < 1e-9);

  for (double k : momentum_grid(32)) {
    CHECK(std::abs(std::abs(initial_spinor(fig3b(), k).dot(psi)) - 1.0) < 1e-12);
  }
}

TEST_CASE("explicit initial states and eigenstate detection") {
  QuenchSpec spec = fig3b();
  CHECK(initial_state_is_eigenstate(spec));
  spec.initial_state = initial_spinor(spec, 0.0);
  CHECK(initial_state_is_eigenstate(spec));
  CHECK(initial_state_eigen_residual(spec) < 1e-12);
  CHECK_FALSE(initial_state_is_eigenstate(fig4()));
  CHECK(initial_spinor(fig4(), 1.0) == coin::plus());
}

TEST_CASE("lower band of a broken initial operator is undefined") {
  QuenchSpec spec = fig3b();
  spec.initial_params = fig4().final_params;
  CHECK_THROWS_AS(initial_spinor(spec, 0.1), BrokenSymmetry);
}

TEST_CASE("fixed points of the lossless quench") {
  check_fixed_points(find_fixed_points(fig3a()),
                     {{-1.0, FixedPointKind::CPlusZero},
                      {-0.5, FixedPointKind::CMinusZero},
                      {0.0, FixedPointKind::CPlusZero},
                      {0.5, FixedPointKind::CMinusZero}},
                     1e-9);
}

TEST_CASE("fixed points of the lossy quench") {
  check_fixed_points(find_fixed_points(fig3b()),
                     {{-0.439874962, FixedPointKind::CMinusZero},
                      {-0.009899310, FixedPointKind::CPlusZero},
                      {0.560125038, FixedPointKind::CMinusZero},
                      {0.990100690, FixedPointKind::CPlusZero}},
                     1e-7);
}

TEST_CASE("fixed points of the trivial final operator are all of one kind") {
  check_fixed_points(find_fixed_points(fig6()),
                     {{-0.506945099, FixedPointKind::CPlusZero},
                      {-0.031885125, FixedPointKind::CPlusZero},
                      {0.493054901, FixedPointKind::CPlusZero},
                      {0.968114875, FixedPointKind::CPlusZero}},
                     1e-7);
}

TEST_CASE("fixed points come in pairs separated by pi") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto points = find_fixed_points(random_unbroken_spec(rng));
    CHECK(points.size() % 2 == 0);
    for (const FixedPoint& fp : points) {
      const double partner = wrap_momentum(fp.k + kPi);
      const bool has_partner = std::any_of(points.begin(), points.end(), [&](const FixedPoint& q) {
        return q.kind == fp.kind && std::abs(wrap_momentum(q.k - partner)) < 1e-7;
      });
      CHECK(has_partner);
    }
  }
}

TEST_CASE("broken final operator has no fixed points") { CHECK(find_fixed_points(fig4()).empty()); }

TEST_CASE("oscillation period") {
  for (double k : momentum_grid(16)) {
    CHECK(oscillation_period(fig3a(), k) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(oscillation_period(fig3b(), k) == doctest::Approx(6.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(oscillation_period(fig4(), 0.2), ImaginaryEnergy);
}

TEST_CASE("Bloch vector at fixed points stays on a pole") {
  for (const FixedPoint& fp : find_fixed_points(fig3b())) {
    const double pole = fp.kind == FixedPointKind::CPlusZero ? -1.0 : 1.0;
    for (double t : {0.0, 1.3, 4.0}) CHECK(bloch_vector(fig3b(), fp.k, t)(2) == doctest::Approx(pole).epsilon(1e-9));
  }
}

TEST_CASE("Bloch vector is periodic with t0") {
  for (double k : {-2.0, 0.3, 1.1}) {
    CHECK((bloch_vector(fig3b(), k, 0.7) - bloch_vector(fig3b(), k, 6.7)).norm() < 1e-12);
  }
}

TEST_CASE("closed form matches stepping the operator") {
  for (const QuenchSpec& spec : {fig3a(), fig3b(), fig6()}) {
    for (double k : momentum_grid(40, 0.01)) {
      for (int t : {0, 1, 2, 5, 9}) {
        CHECK((bloch_vector(spec, k, t) - stepped_bloch_vector(spec, k, t)).norm() < 1e-10);
      }
    }
  }
  for (double k : momentum_grid(20, 0.01)) {
    CHECK((bloch_vector(fig4(), k, 7) - stepped_bloch_vector(fig4(), k, 7)).norm() < 1e-9);
  }
}

TEST_CASE("density matrix: trace one, density route equals closed form") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> uniform(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const QuenchSpec spec = random_unbroken_spec(rng);
    const double k = uniform(rng);
    const double t = 10.0 * std::abs(uniform(rng));
    const Sector sector = make_sector(spec, k);
    const ComplexMat2 rho = density_matrix(sector, t);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(max_abs_diff(rho * rho, rho) < 1e-10);
    const Vec3 n = bloch_vector(sector, t);
    CHECK(std::abs(n.norm() - 1.0) < 1e-12);
    CHECK((bloch_from_density(rho, sector.bands) - n).norm() < 1e-10);
  }
}

TEST_CASE("dressed Pauli matrices") {
  const Sector sector = make_sector(fig3b(), 0.9);
  const auto tau = dressed_paulis(sector.bands);
  CHECK(max_abs_diff(tau[0], ComplexMat2::Identity()) < 1e-12);
  for (int i = 1; i <= 3; ++i) {
    CHECK(max_abs_diff(tau[i] * tau[i], ComplexMat2::Identity()) < 1e-12);
    CHECK(std::abs(tau[i].trace()) < 1e-12);
  }
  CHECK(max_abs_diff(tau[1] * tau[2], kI * tau[3]) < 1e-12);
}

TEST_CASE("broken regime flows to the amplified band") {
  const QuenchSpec spec = fig4();
  for (double k : momentum_grid(64)) {
    const Sector s = make_sector(spec, k);
    CHECK(s.regime == Regime::ImaginaryE);
    CHECK(s.energy.real() == 0.0);
    CHECK(s.energy.imag() > 0.0);
    CHECK(std::abs(bloch_vector(s, 12.0)(2) - 1.0) < 0.05);
    CHECK(std::abs(bloch_vector(s, 400.0).norm() - 1.0) < 1e-12);
    CHECK(std::abs(density_matrix(s, 12.0).trace() - 1.0) < 1e-12);
  }
}

TEST_CASE("Bloch field layout") {
  const auto ks = momentum_grid(8);
  const auto ts = time_grid(6.0, 4);
  CHECK(ts.front() == 0.0);
  CHECK(ts.back() == 6.0);
  const BlochField field = bloch_field(fig3a(), ks, ts);
  REQUIRE(field.n.size() == 32);
  CHECK((field.at(3, 2) - bloch_vector(fig3a(), ks[3], ts[2])).norm() == 0.0);
  for (Regime r : field.regime) CHECK(r == Regime::RealE);
  for (const Vec3& n : field.n) CHECK(std::abs(n.norm() - 1.0) < 1e-12);
}

TEST_CASE("labels") {
  CHECK(std::string(to_string(Regime::ImaginaryE)) == "imaginary");
  CHECK(std::string(to_string(FixedPointKind::CMinusZero)) == "c_minus_zero");
}
