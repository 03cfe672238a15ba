#include "pfam/errors.hpp"

namespace pf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::MismatchedParams: return "MismatchedParams";
    case ErrorCode::NonUnit: return "NonUnit";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::DenominatorMismatch: return "DenominatorMismatch";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::ZeroAtPrecision: return "ZeroAtPrecision";
    case ErrorCode::InsufficientTruncation: return "InsufficientTruncation";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::CoincidentNodes: return "CoincidentNodes";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::BadConjugationImage: return "BadConjugationImage";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::Incompatible: return "Incompatible";
    case ErrorCode::ApparentlyReducible: return "ApparentlyReducible";
    case ErrorCode::NonIntegralEntry: return "NonIntegralEntry";
    case ErrorCode::NotTorsion: return "NotTorsion";
    case ErrorCode::PrecisionAmbiguous: return "PrecisionAmbiguous";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::LevelNotCoprime: return "LevelNotCoprime";
    case ErrorCode::MissingCoefficient: return "MissingCoefficient";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pf
