#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superosc {

enum class ErrorCode {
  UnknownLetter,
  SyntaxError,
  BadExponent,
  UnboundLetter,
  DimensionMismatch,
  DivergentBracket,
  InvalidDimension,
  InvalidQ,
  UnknownAlgebra,
  InhomogeneousMatrix,
  NotOdd,
  NotSelfAdjoint,
  LetterViolation,
  SectorDecompositionFailure,
  NoVacuum,
  ReducibleRepresentation,
  InconsistentSystem,
  InvalidFormat,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` is stable,
// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the expression parser; `position()` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, const std::string& detail);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace superosc
