#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace afe {

enum class ErrorCode {
  kInvalidLength,
  kMalformed,
  kInvalidPoint,
  kInsufficientTokens,
  kPastDeadline,
  kWrongState,
  kBadTimeline,
  kTooLate,
  kTooEarly,
  kUnderpriced,
  kUnauthorized,
  kInvalidArgument,
  kNotFound,
  kIntegrity,
  kUnsupportedFormat,
  kUnsupportedDimension,
  kMalformedAsset,
  kCorruptAsset,
  kInvalidWitness,
  kPolicy,
  kConfig,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers and tests can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace afe
