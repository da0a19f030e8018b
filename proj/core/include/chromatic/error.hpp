#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chromatic {

enum class ErrorCode {
  DuplicateVertexId,
  IllColoredFacet,
  ImpureComplex,
  DanglingVertexRef,
  IsolatedVertex,
  InvalidCarrier,
  UnknownFacet,
  UnknownAgent,
  EmptyGroup,
  TooManyAgents,
  NotEquivalence,
  ImproperFrame,
  SyntaxError,
  EmptyModel,
  UnknownKind,
  TooFewAgents,
  AgentSetMismatch,
  UnsupportedAgentCount,
  MissingCarrier,
  PartialMap,
  NotOneRoundUB,
  ShapeMismatch,
  MalformedInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Formula and state parsers report the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& detail);

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace chromatic
