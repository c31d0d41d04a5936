#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wpdist {

enum class ErrorCode {
  // hodge_core
  DimensionMismatch,
  DegenerateFiltration,
  IndexExceedsWeight,
  NonCommuting,
  GradeOutOfRange,
  WeightOverflow,
  InvalidDatum,
  // limiting_data
  ZeroVector,
  WrongWeight,
  DomainError,
  // potential
  NonRealCoefficient,
  NonPositive,
  FitFailure,
  // classifier
  ZeroPolynomial,
  UnrecognizedSupport,
  NotPositive,
  NoRealPositiveFactor,
  NotPositiveOnK,
  // metric_distance
  NonPositivePotential,
  QuadratureBlowup,
  InsufficientSpan,
  // cli
  ParseError,
  SchemaError,
  UnknownFixture,
};

std::string_view error_name(ErrorCode code);

/// True for errors caused by malformed input rather than by the mathematics.
bool is_schema_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wpdist
