#pragma once

#include <array>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "ptqw/errors.hpp"

namespace ptqw {

using Complex = std::complex<double>;
using ComplexMat2 = Eigen::Matrix2cd;
/// Coin spinor in the {|H>, |V>} basis.
using Spinor = Eigen::Vector2cd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// sigma_0 (identity) .. sigma_3.
const ComplexMat2& pauli(int j);

/// Named coin states. |L> = (|H> - i|V>)/sqrt2, |D> = |+> = (|H> + |V>)/sqrt2.
namespace coin {
Spinor horizontal();
Spinor vertical();
Spinor plus();
Spinor minus();
Spinor left_circular();
Spinor diagonal();
}  // namespace coin

/// Band label. Plus carries eps_+ = +E, Minus carries eps_- = -E.
enum class Band : int { Plus = 0, Minus = 1 };

inline constexpr int index(Band b) { return static_cast<int>(b); }

/// Eigenpairs of a diagonalizable 2x2 operator in a biorthonormal basis.
///
/// `left[mu]` holds the ket |chi_mu>; the left eigenvector is its adjoint
/// <chi_mu| with <chi_mu| m = lambda_mu <chi_mu|. Right eigenvectors have
/// unit norm; left eigenvectors are scaled so <chi_mu|psi_mu> = 1.
struct EigenSystem {
  std::array<Complex, 2> eigenvalues;
  std::array<Complex, 2> quasienergies;  // eps = i ln(lambda), principal branch
  std::array<Spinor, 2> right;
  std::array<Spinor, 2> left;

  const Complex& eigenvalue(Band b) const { return eigenvalues[index(b)]; }
  const Complex& quasienergy(Band b) const { return quasienergies[index(b)]; }
  const Spinor& right_vector(Band b) const { return right[index(b)]; }
  const Spinor& left_vector(Band b) const { return left[index(b)]; }

  /// |psi_mu><chi_mu|
  ComplexMat2 projector(Band b) const {
    return right_vector(b) * left_vector(b).adjoint();
  }

  /// Multiplies band `b`'s right and left vectors by the same phase, which
  /// keeps every biorthogonal product unchanged.
  void rephase(Band b, Complex phase);
};

inline constexpr double kDegeneracyThreshold = 1e-9;

/// Biorthogonal eigendecomposition of a 2x2 complex matrix.
///
/// Band ordering: eps_- has the lower real part; when the real parts tie
/// (including the -pi/+pi branch cut of negative real eigenvalues) eps_- has
/// the lower imaginary part. Throws DegenerateSpectrum when
/// |lambda_+ - lambda_-| <= 1e-9.
EigenSystem eig_biorthogonal(const ComplexMat2& m);

/// Coefficients c_j with m = sum_j c_j sigma_j.
std::array<Complex, 4> pauli_expand(const ComplexMat2& m);
ComplexMat2 pauli_assemble(const std::array<Complex, 4>& coefficients);

/// Largest elementwise modulus of a - b.
double max_abs_diff(const ComplexMat2& a, const ComplexMat2& b);

}  // namespace ptqw
