#include "ptqw/core.hpp"

#include <cmath>
#include <sstream>

namespace ptqw {

const ComplexMat2& pauli(int j) {
  static const std::array<ComplexMat2, 4> basis = [] {
    std::array<ComplexMat2, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -kI, kI, 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return basis.at(static_cast<std::size_t>(j));
}

namespace coin {
Spinor horizontal() { return Spinor(1.0, 0.0); }
Spinor vertical() { return Spinor(0.0, 1.0); }
Spinor plus() { return Spinor(1.0, 1.0) / std::sqrt(2.0); }
Spinor minus() { return Spinor(1.0, -1.0) / std::sqrt(2.0); }
Spinor left_circular() { return Spinor(1.0, -kI) / std::sqrt(2.0); }
Spinor diagonal() { return plus(); }
}  // namespace coin

void EigenSystem::rephase(Band b, Complex phase) {
  right[index(b)] *= phase;
  left[index(b)] *= phase;
}

namespace {

// Null vector of (m - lambda), taking whichever row gives the better
// conditioned candidate.
Spinor null_vector(const ComplexMat2& m, Complex lambda) {
  const Spinor from_row0(m(0, 1), lambda - m(0, 0));
  const Spinor from_row1(lambda - m(1, 1), m(1, 0));
  const Spinor& v = from_row0.norm() >= from_row1.norm() ? from_row0 : from_row1;
  return v.normalized();
}

bool plus_first(Complex e0, Complex e1) {
  constexpr double tie = 1e-9;
  const double d_re = e0.real() - e1.real();
  const bool tied = std::abs(d_re) < tie || std::abs(std::abs(d_re) - 2 * kPi) < tie;
  if (!tied) return d_re > 0;
  return e0.imag() > e1.imag();
}

}  // namespace

EigenSystem eig_biorthogonal(const ComplexMat2& m) {
  const Complex half_trace = 0.5 * (m(0, 0) + m(1, 1));
  const Complex half_diff = 0.5 * (m(0, 0) - m(1, 1));
  const Complex root = std::sqrt(half_diff * half_diff + m(0, 1) * m(1, 0));

  if (2.0 * std::abs(root) <= kDegeneracyThreshold) {
    std::ostringstream msg;
    msg << "eigenvalue gap " << 2.0 * std::abs(root) << " at or below "
        << kDegeneracyThreshold;
    throw DegenerateSpectrum(msg.str());
  }

  std::array<Complex, 2> lambda{half_trace + root, half_trace - root};
  std::array<Complex, 2> eps{kI * std::log(lambda[0]), kI * std::log(lambda[1])};
  if (!plus_first(eps[0], eps[1])) {
    std::swap(lambda[0], lambda[1]);
    std::swap(eps[0], eps[1]);
  }

  EigenSystem es;
  es.eigenvalues = lambda;
  es.quasienergies = eps;
  const ComplexMat2 adj = m.adjoint();
  for (int mu = 0; mu < 2; ++mu) {
    es.right[mu] = null_vector(m, lambda[mu]);
    Spinor chi = null_vector(adj, std::conj(lambda[mu]));
    const Complex overlap = chi.dot(es.right[mu]);  // <chi|psi>
    es.left[mu] = chi / std::conj(overlap);
  }
  return es;
}

std::array<Complex, 4> pauli_expand(const ComplexMat2& m) {
  std::array<Complex, 4> c;
  for (int j = 0; j < 4; ++j) c[j] = 0.5 * (m * pauli(j)).trace();
  return c;
}

ComplexMat2 pauli_assemble(const std::array<Complex, 4>& coefficients) {
  ComplexMat2 m = ComplexMat2::Zero();
  for (int j = 0; j < 4; ++j) m += coefficients[j] * pauli(j);
  return m;
}

double max_abs_diff(const ComplexMat2& a, const ComplexMat2& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace ptqw
