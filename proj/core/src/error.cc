#include "afe/error.h"

namespace afe {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidLength: return "invalid-length";
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kInvalidPoint: return "invalid-point";
    case ErrorCode::kInsufficientTokens: return "insufficient-tokens";
    case ErrorCode::kPastDeadline: return "past-deadline";
    case ErrorCode::kWrongState: return "wrong-state";
    case ErrorCode::kBadTimeline: return "bad-timeline";
    case ErrorCode::kTooLate: return "too-late";
    case ErrorCode::kTooEarly: return "too-early";
    case ErrorCode::kUnderpriced: return "underpriced";
    case ErrorCode::kUnauthorized: return "unauthorized";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kNotFound: return "not-found";
    case ErrorCode::kIntegrity: return "integrity";
    case ErrorCode::kUnsupportedFormat: return "unsupported-format";
    case ErrorCode::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::kMalformedAsset: return "malformed-asset";
    case ErrorCode::kCorruptAsset: return "corrupt-asset";
    case ErrorCode::kInvalidWitness: return "invalid-witness";
    case ErrorCode::kPolicy: return "policy";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace afe
