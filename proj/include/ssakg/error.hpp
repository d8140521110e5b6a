#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssakg {

enum class ErrorCode {
  InvalidNodeCount,
  DuplicateElement,
  SymbolOutOfRange,
  InvalidSequence,
  InconsistentContext,
  NoValidOrdering,
  AmbiguityOverflow,
  MalformedPath,
  InvalidParams,
  CorpusTooSmall,
  IoError,
  EncodingError,
  ParseError,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (bench, cli) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ssakg
