#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqjacobi {

enum class ErrorCode {
  NonSquare,
  AsymmetryExceeded,
  NonFinite,
  ZeroOffDiagonal,
  ParameterOutOfRange,
  IndexOutOfRange,
  DegenerateInput,
  InvalidConfig,
  InsufficientHistory,
  DimensionTooLarge,
  RootIsolationFailed,
  DimensionMismatch,
  ParseError,
  UnsupportedField,
  IoError,
  BadSpec,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error code. Everything the library
/// throws on a contract violation is an `Error`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sqjacobi
