#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace latfm {

enum class ErrorCode {
  NotSymmetric,
  NotSquare,
  Degenerate,
  ZeroScale,
  DimensionMismatch,
  NotIsotropic,
  NotPrimitive,
  NotUnimodular,
  OddLatticeNoQ,
  SearchSpaceTooLarge,
  NotSubgroup,
  RankUnsupported,
  NotCoprime,
  HypothesisFailed,
  InvalidArgument,
  InvalidIsometry,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every latfm operation. The code identifies the
/// violated precondition; what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace latfm
