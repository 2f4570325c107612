#include "sqjacobi/error.hpp"

namespace sqjacobi {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::AsymmetryExceeded: return "AsymmetryExceeded";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::RootIsolationFailed: return "RootIsolationFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::BadSpec: return "BadSpec";
  }
  return "Unknown";
}

}  // namespace sqjacobi
