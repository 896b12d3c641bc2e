#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kforge {

enum class ErrorCode {
  ShapeMismatch,
  IllDefined,
  InvalidInput,
  NotHereditary,
  NotSaturated,
  HasBreakingVertices,
  BudgetExceeded,
  RankViolation,
  TargetNotExact,
  EndMapsNotIso,
  NoWitness,
  NotAdhesive,
  NoDominatedRow,
  NeedsTwoQuotientVertices,
  NoSplitting,
  UnitMismatch,
  UnsupportedRieszInput,
  UnsupportedOrderTag,
  HypothesesNotEvidenced,
  VerificationFailed,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kforge
