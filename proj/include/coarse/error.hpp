#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coarse {

enum class ErrorCode {
  InvalidArgument,
  EmptyLevel,
  NotNested,
  NotCovering,
  NoCollar,
  DepthTooSmall,
  ZeroGap,
  NegativeArgument,
  AsymmetricInput,
  GuaranteeViolation,
  EmptySide,
  EmptyFamily,
  PreconditionFailed,
  MissingLimitTags,
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by amplify when a constructed metric fails one of its stated
/// guarantees. `level` is the exhaustion index n, (x, y) the offending pair.
class GuaranteeViolation : public Error {
 public:
  GuaranteeViolation(int guarantee, int level, std::ptrdiff_t x, std::ptrdiff_t y, const std::string& what)
      : Error(ErrorCode::GuaranteeViolation, what), guarantee(guarantee), level(level), x(x), y(y) {}

  int guarantee;
  int level;
  std::ptrdiff_t x;
  std::ptrdiff_t y;
};

}  // namespace coarse
