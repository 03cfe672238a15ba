#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pf {

enum class ErrorCode {
  InvalidParams,
  MismatchedParams,
  NonUnit,
  ZeroResidue,
  DenominatorMismatch,
  NonUnitConstantTerm,
  ZeroAtPrecision,
  InsufficientTruncation,
  OutsideDomain,
  CoincidentNodes,
  PrecisionExhausted,
  NotIntegral,
  EmptyWindow,
  BadConjugationImage,
  NotInvertible,
  Incompatible,
  ApparentlyReducible,
  NonIntegralEntry,
  NotTorsion,
  PrecisionAmbiguous,
  ParseError,
  NotNormalized,
  LevelNotCoprime,
  MissingCoefficient,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pf
