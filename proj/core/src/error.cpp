#include "chromatic/error.hpp"

namespace chromatic {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateVertexId: return "DuplicateVertexId";
    case ErrorCode::IllColoredFacet: return "IllColoredFacet";
    case ErrorCode::ImpureComplex: return "ImpureComplex";
    case ErrorCode::DanglingVertexRef: return "DanglingVertexRef";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::InvalidCarrier: return "InvalidCarrier";
    case ErrorCode::UnknownFacet: return "UnknownFacet";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::TooManyAgents: return "TooManyAgents";
    case ErrorCode::NotEquivalence: return "NotEquivalence";
    case ErrorCode::ImproperFrame: return "ImproperFrame";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::EmptyModel: return "EmptyModel";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::TooFewAgents: return "TooFewAgents";
    case ErrorCode::AgentSetMismatch: return "AgentSetMismatch";
    case ErrorCode::UnsupportedAgentCount: return "UnsupportedAgentCount";
    case ErrorCode::MissingCarrier: return "MissingCarrier";
    case ErrorCode::PartialMap: return "PartialMap";
    case ErrorCode::NotOneRoundUB: return "NotOneRoundUB";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

SyntaxError::SyntaxError(std::size_t position, const std::string& detail)
    : Error(ErrorCode::SyntaxError, "at offset " + std::to_string(position) + ": " + detail),
      position_(position) {}

}  // namespace chromatic
