#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ricci {

enum class ErrorCode {
  SingularMetric,
  OutOfDomain,
  DegeneratePlane,
  DegenerateSpan,
  VectorNotInPlane,
  NotUnit,
  NotOrthonormal,
  DimensionMismatch,
  FrameMismatch,
  SearchBudgetExceeded,
  ChartExit,
  StepFailure,
  ConjugatePoint,
  FitRejected,
  WarpNotPositive,
  UnknownModel,
  ManifestError,
  TaskError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::VectorNotInPlane: return "VectorNotInPlane";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::ChartExit: return "ChartExit";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::ConjugatePoint: return "ConjugatePoint";
    case ErrorCode::FitRejected: return "FitRejected";
    case ErrorCode::WarpNotPositive: return "WarpNotPositive";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::ManifestError: return "ManifestError";
    case ErrorCode::TaskError: return "TaskError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ricci
