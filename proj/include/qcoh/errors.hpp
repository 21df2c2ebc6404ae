#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcoh {

enum class ErrorCode {
  NotHermitian,
  TraceNotOne,
  NotPSD,
  NotNormalized,
  DimensionNot2,
  DimensionMismatch,
  NotIsometry,
  RankMismatch,
  NotAPartition,
  NonExactMeasure,
  TooLarge,
  RateOutOfRange,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

// Every failure in the library surfaces as this exception; the C layer maps
// code() onto qcoh_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qcoh
