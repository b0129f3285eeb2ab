#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twopart {

enum class ErrorCode {
  DuplicateVertex,
  SideOverlap,
  SameSideEdge,
  SymmetricEdgePair,
  UnknownEndpoint,
  UnknownVertex,
  InvalidArgument,
  KappaTooSmall,
  ApproximantNotFound,
  CapExceeded,
  AutGroupTooLarge,
  InsufficientGenericity,
  TargetExceedsStructure,
  BudgetExceeded,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::SideOverlap: return "SideOverlap";
    case ErrorCode::SameSideEdge: return "SameSideEdge";
    case ErrorCode::SymmetricEdgePair: return "SymmetricEdgePair";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::KappaTooSmall: return "KappaTooSmall";
    case ErrorCode::ApproximantNotFound: return "ApproximantNotFound";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::AutGroupTooLarge: return "AutGroupTooLarge";
    case ErrorCode::InsufficientGenericity: return "InsufficientGenericity";
    case ErrorCode::TargetExceedsStructure: return "TargetExceedsStructure";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Input-shaped failures (bad files, bad parameters) as opposed to
/// computations that ran and came back negative.
constexpr bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateVertex:
    case ErrorCode::SideOverlap:
    case ErrorCode::SameSideEdge:
    case ErrorCode::SymmetricEdgePair:
    case ErrorCode::UnknownEndpoint:
    case ErrorCode::UnknownVertex:
    case ErrorCode::InvalidArgument:
    case ErrorCode::KappaTooSmall:
    case ErrorCode::TargetExceedsStructure:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(compose(code, message, field)),
        code_(code),
        field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  /// Location of the offending record, e.g. "edges[3]" or "x[1]"; may be empty.
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string compose(ErrorCode code, const std::string& message,
                             const std::string& field) {
    std::string out(to_string(code));
    if (!field.empty()) out += " at " + field;
    out += ": " + message;
    return out;
  }

  ErrorCode code_;
  std::string field_;
};

}  // namespace twopart
