#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace conespec {

enum class ErrorCode {
  Parse,
  Dimension,
  UnsupportedAtom,
  UnsupportedDomain,
  DimensionMismatch,
  NonIntegerMultiplicity,
  CutoffExceeded,
  QuadratureFailure,
  ToleranceNotMet,
  NotPositiveDefinite,
  InsufficientModes,
  NegativeDiscriminant,
  RootNotBracketed,
  DomainError,
  Overflow,
  InvalidArgument,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected,
             const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace conespec
