#include "errors.hpp"

namespace conespec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Dimension: return "DimensionError";
    case ErrorCode::UnsupportedAtom: return "UnsupportedAtom";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::CutoffExceeded: return "CutoffExceeded";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InsufficientModes: return "InsufficientModes";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::Overflow: return "OverflowError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "InternalError";
  }
  return "UnknownError";
}

namespace {

std::string describe(std::size_t offset, const std::vector<std::string>& expected,
                     const std::string& message) {
  std::string out = message + " at offset " + std::to_string(offset);
  if (!expected.empty()) {
    out += "; expected one of:";
    for (const auto& tok : expected) out += " " + tok;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& message)
    : Error(ErrorCode::Parse, describe(offset, expected, message)),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace conespec
