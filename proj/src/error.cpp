#include "qsynth/error.hpp"

namespace qsynth {

std::string_view error_token(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConflictingPhase: return "ConflictingPhase";
    case ErrorCode::EmptyState: return "EmptyState";
    case ErrorCode::PhaseGridTooCoarse: return "PhaseGridTooCoarse";
    case ErrorCode::AllTermsCancelled: return "AllTermsCancelled";
    case ErrorCode::MalformedKey: return "MalformedKey";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::Unconverged: return "Unconverged";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace qsynth
