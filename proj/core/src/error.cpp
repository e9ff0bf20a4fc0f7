#include "superosc/error.hpp"

namespace superosc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::UnboundLetter: return "UnboundLetter";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DivergentBracket: return "DivergentBracket";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidQ: return "InvalidQ";
    case ErrorCode::UnknownAlgebra: return "UnknownAlgebra";
    case ErrorCode::InhomogeneousMatrix: return "InhomogeneousMatrix";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::LetterViolation: return "LetterViolation";
    case ErrorCode::SectorDecompositionFailure: return "SectorDecompositionFailure";
    case ErrorCode::NoVacuum: return "NoVacuum";
    case ErrorCode::ReducibleRepresentation: return "ReducibleRepresentation";
    case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    case ErrorCode::InvalidFormat: return "InvalidFormat";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

ParseError::ParseError(ErrorCode code, std::size_t position, const std::string& detail)
    : Error(code, detail + " (at offset " + std::to_string(position) + ")"), position_(position) {}

}  // namespace superosc
