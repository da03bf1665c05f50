#include "billiards/error.hpp"

namespace billiards {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::HoleOutsideOrTouching: return "HoleOutsideOrTouching";
    case ErrorCode::SlitHole: return "SlitHole";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::Grazing: return "Grazing";
    case ErrorCode::VertexHit: return "VertexHit";
    case ErrorCode::InvalidPhasePoint: return "InvalidPhasePoint";
    case ErrorCode::DifferentEdges: return "DifferentEdges";
    case ErrorCode::NotParallel: return "NotParallel";
    case ErrorCode::OutsideF: return "OutsideF";
    case ErrorCode::OutsideEdge: return "OutsideEdge";
    case ErrorCode::PointOutsideCopy: return "PointOutsideCopy";
    case ErrorCode::NotInSameVab: return "NotInSameVab";
    case ErrorCode::ResolutionInconclusive: return "ResolutionInconclusive";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::CodingsDiverge: return "CodingsDiverge";
    case ErrorCode::BlockNotRecurrent: return "BlockNotRecurrent";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace billiards
