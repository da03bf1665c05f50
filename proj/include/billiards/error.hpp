#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace billiards {

/// Failure categories raised by the library. Names double as the tokens
/// printed by the CLI, so keep them stable.
enum class ErrorCode {
  InvalidInput,
  ParseError,
  NotSimple,
  HoleOutsideOrTouching,
  SlitHole,
  DuplicateLabel,
  UnknownLabel,
  Grazing,
  VertexHit,
  InvalidPhasePoint,
  DifferentEdges,
  NotParallel,
  OutsideF,
  OutsideEdge,
  PointOutsideCopy,
  NotInSameVab,
  ResolutionInconclusive,
  UnknownCell,
  PreconditionViolated,
  DegenerateAngle,
  KTooLarge,
  CodingsDiverge,
  BlockNotRecurrent,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace billiards
