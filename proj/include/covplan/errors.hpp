#pragma once

#include <stdexcept>
#include <string>

namespace covplan {

enum class ErrorCode {
  InvalidGeometry,
  ChainsIntersect,
  AmbiguousNesting,
  NumericalDegeneracy,
  RegionCollapsed,
  OffsetOverlap,
  HorizontalEdgeDegeneracy,
  NonSimpleUnion,
  InvalidOverlap,
  EmptyPath,
  UnroutableTransition,
  ParseError,
  OpenChain,
  IoError,
};

const char* error_code_name(ErrorCode code);

/// Library-wide error. Carries the failing module's name so callers can
/// report provenance.
class PlanningError : public std::runtime_error {
 public:
  PlanningError(ErrorCode code, std::string module, const std::string& message)
      : std::runtime_error(message), code_(code), module_(std::move(module)) {}

  ErrorCode code() const { return code_; }
  const std::string& module() const { return module_; }

  /// True for input/validation problems (CLI exit code 2), false for
  /// geometric failures discovered mid-pipeline (exit code 3).
  bool is_input_error() const {
    switch (code_) {
      case ErrorCode::InvalidGeometry:
      case ErrorCode::ChainsIntersect:
      case ErrorCode::AmbiguousNesting:
      case ErrorCode::InvalidOverlap:
      case ErrorCode::ParseError:
      case ErrorCode::OpenChain:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
  std::string module_;
};

}  // namespace covplan
