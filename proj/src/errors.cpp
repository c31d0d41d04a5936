#include "wpdist/errors.hpp"

namespace wpdist {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateFiltration: return "DegenerateFiltration";
    case ErrorCode::IndexExceedsWeight: return "IndexExceedsWeight";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::GradeOutOfRange: return "GradeOutOfRange";
    case ErrorCode::WeightOverflow: return "WeightOverflow";
    case ErrorCode::InvalidDatum: return "InvalidDatum";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::WrongWeight: return "WrongWeight";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonRealCoefficient: return "NonRealCoefficient";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::FitFailure: return "FitFailure";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::UnrecognizedSupport: return "UnrecognizedSupport";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NoRealPositiveFactor: return "NoRealPositiveFactor";
    case ErrorCode::NotPositiveOnK: return "NotPositiveOnK";
    case ErrorCode::NonPositivePotential: return "NonPositivePotential";
    case ErrorCode::QuadratureBlowup: return "QuadratureBlowup";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
  }
  return "Unknown";
}

bool is_schema_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::SchemaError ||
         code == ErrorCode::UnknownFixture || code == ErrorCode::DimensionMismatch ||
         code == ErrorCode::InvalidDatum;
}

}  // namespace wpdist
