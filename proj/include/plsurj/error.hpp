#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plsurj {

enum class ErrorCode {
  DimensionMismatch,
  DegenerateSimplex,
  CenterOnBoundary,
  RayDoesNotExit,
  NotFaceClosed,
  BadIntersection,
  UnknownVertex,
  BudgetExceeded,
  CarrierNotFound,
  OutsideDomain,
  NotSimplicial,
  LipschitzViolation,
  OracleDomainError,
  NotARefinement,
  WitnessNotFound,
  InternalCheckFailed,
  SupBoundNotMet,
  OutsideSimplex,
  EpsilonTooLarge,
  ZeroDimensionalL,
  HypothesisNotCertified,
  OutsideU,
  UnsupportedDimension,
  InvalidInput,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plsurj
