#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace causality {

enum class ErrorCode {
  PartialMap,
  NotAMorphism,
  MismatchedTarget,
  MismatchedSource,
  NotMono,
  UnknownVertex,
  UnknownEdge,
  InvalidGraph,
  InvalidRule,
  InvalidMatch,
  DanglingEdges,
  DifferentHost,
  NotCompatible,
  NotSuccessive,
  SyntaxError,
  DuplicateLabel,
  NotGood,
  StateCapExceeded,
  UnknownLabel,
  NotCausallyOrdered,
  EndpointMismatch,
  LabelNotFound,
  BadIndices,
  BadJson,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::SyntaxError, message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace causality
