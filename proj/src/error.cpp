#include "causality/error.hpp"

namespace causality {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PartialMap: return "PartialMap";
    case ErrorCode::NotAMorphism: return "NotAMorphism";
    case ErrorCode::MismatchedTarget: return "MismatchedTarget";
    case ErrorCode::MismatchedSource: return "MismatchedSource";
    case ErrorCode::NotMono: return "NotMono";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::InvalidMatch: return "InvalidMatch";
    case ErrorCode::DanglingEdges: return "DanglingEdges";
    case ErrorCode::DifferentHost: return "DifferentHost";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::NotSuccessive: return "NotSuccessive";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::NotGood: return "NotGood";
    case ErrorCode::StateCapExceeded: return "StateCapExceeded";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NotCausallyOrdered: return "NotCausallyOrdered";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::LabelNotFound: return "LabelNotFound";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::BadJson: return "BadJson";
  }
  return "Unknown";
}

}  // namespace causality
