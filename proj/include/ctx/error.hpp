#pragma once

#include <stdexcept>
#include <string>

namespace ctx {

enum class ErrorCode {
  // scenario
  UnknownMeasurement,
  UnknownMeasurementInContext,
  EmptyOutcomeSet,
  DuplicateMeasurementId,
  UncoveredMeasurement,
  InvalidArity,
  NotAContext,
  NotSubdomain,
  // model
  NotNormalized,
  NegativeWeight,
  IncompatibleMarginals,
  MissingFacet,
  ScenarioMismatch,
  NotGlobal,
  EmptySupport,
  // procedure
  NotSimplicial,
  IncompleteTable,
  CodomainViolation,
  // games
  NotDichotomic,
  // lp / search
  MalformedSystem,
  BudgetExceeded,
  // io
  ParseError,
  InternalError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ctx
