#pragma once

#include <stdexcept>
#include <string>

namespace ptqw {

/// Base class for every error raised by the library. `kind()` is a stable,
/// machine-readable tag (the CLI prints it verbatim).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define PTQW_DEFINE_ERROR(Name)                                              \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& message) : Error(#Name, message) {}     \
  }

/// Eigenvalue gap below threshold; biorthogonal normalization diverges.
PTQW_DEFINE_ERROR(DegenerateSpectrum);
/// Band touching (d0^2 = 1) where quasienergies coalesce.
PTQW_DEFINE_ERROR(ExceptionalPoint);
/// Winding number residual too large to round.
PTQW_DEFINE_ERROR(NonQuantized);
/// Operation requires the PT-unbroken regime.
PTQW_DEFINE_ERROR(BrokenSymmetry);
/// Normalization denominator of a non-Hermitian density matrix vanished.
PTQW_DEFINE_ERROR(SingularNormalization);
/// Oscillation period requested where the band energy is not real.
PTQW_DEFINE_ERROR(ImaginaryEnergy);
/// Adjacent lattice vectors are antipodal; grid too coarse.
PTQW_DEFINE_ERROR(DegenerateTriangle);
/// Parameter outside its domain.
PTQW_DEFINE_ERROR(InvalidParameter);
/// Bad command line, config file, or angle expression.
PTQW_DEFINE_ERROR(ConfigError);

#undef PTQW_DEFINE_ERROR

}  // namespace ptqw
