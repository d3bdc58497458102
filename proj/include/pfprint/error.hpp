#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pfprint {

enum class ErrorCode {
  // mpoly
  NotDivisible,
  MissingAssignment,
  ParseError,
  // ffield
  ZeroInverse,
  FieldMismatch,
  NotPrime,
  // encmat
  NotAProduct,
  // logic
  SyntaxError,
  UnknownSymbol,
  ArityMismatch,
  ReservedSymbol,
  NotAVariable,
  MissingBinding,
  ForwardReference,
  BadQed,
  MPShapeMismatch,
  GoalMismatch,
  // fingerprint
  UnallocatedSymbol,
  UntrackedVariable,
  // protocol / cli
  InadmissibleAssignment,
  Io,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures also remember the byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, "at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace pfprint
