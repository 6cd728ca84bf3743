#pragma once

#include <stdexcept>
#include <string>

namespace witt {

// Base class for all domain errors. `code` is the stable machine-readable
// name echoed by the CLI; `what()` prepends it to the human-readable message.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(msg.empty() ? c : c + ": " + msg), code(std::move(c)) {}
};

#define WITT_DEFINE_ERROR(NAME)                  \
  struct NAME : Error {                          \
    explicit NAME(const std::string& msg = "")   \
        : Error(#NAME, msg) {}                   \
  }

WITT_DEFINE_ERROR(EvalAtPole);
WITT_DEFINE_ERROR(NotDivisible);
WITT_DEFINE_ERROR(NotInvertible);
WITT_DEFINE_ERROR(VariantMismatch);
WITT_DEFINE_ERROR(SizeMismatch);
WITT_DEFINE_ERROR(DuplicatePoint);
WITT_DEFINE_ERROR(AlgebraMismatch);
WITT_DEFINE_ERROR(NegativeExponent);
WITT_DEFINE_ERROR(NotPoisson);
WITT_DEFINE_ERROR(OrderTooSmall);
WITT_DEFINE_ERROR(NotASubalgebra);
WITT_DEFINE_ERROR(NotIsotropic);
WITT_DEFINE_ERROR(WrongCodimension);
WITT_DEFINE_ERROR(TopCoefficientZero);
WITT_DEFINE_ERROR(NotInPolarization);
WITT_DEFINE_ERROR(TwistObstruction);
WITT_DEFINE_ERROR(ZeroVector);
WITT_DEFINE_ERROR(NotTotallyEven);

#undef WITT_DEFINE_ERROR

}  // namespace witt
