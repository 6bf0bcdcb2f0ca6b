#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsynth {

enum class ErrorCode {
  ConflictingPhase,
  EmptyState,
  PhaseGridTooCoarse,
  AllTermsCancelled,
  MalformedKey,
  InvalidArgument,
  GridMismatch,
  Unconverged,
  CapExceeded,
  MalformedLine,
  SelfLoop,
  DuplicateEdge,
  VertexOutOfRange,
  CorruptFile,
  HeaderMismatch,
  IoFailure,
  ConfigError,
};

// Stable token printed by the CLI on failure.
std::string_view error_token(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_token(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view token() const noexcept { return error_token(code_); }

 private:
  ErrorCode code_;
};

}  // namespace qsynth
