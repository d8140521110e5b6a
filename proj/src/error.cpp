#include "ssakg/error.hpp"

namespace ssakg {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidNodeCount: return "InvalidNodeCount";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::InconsistentContext: return "InconsistentContext";
    case ErrorCode::NoValidOrdering: return "NoValidOrdering";
    case ErrorCode::AmbiguityOverflow: return "AmbiguityOverflow";
    case ErrorCode::MalformedPath: return "MalformedPath";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::CorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EncodingError: return "EncodingError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace ssakg
