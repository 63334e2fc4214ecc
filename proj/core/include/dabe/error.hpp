#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dabe {

enum class Errc {
  InversionOfZero,
  BackendMismatch,
  UnsupportedBackend,
  NotPrime,
  MalformedEncoding,
  ParamMismatch,
  SyntaxError,
  ThresholdOutOfRange,
  IndexNotInSet,
  EmptyAttributeSet,
  PolicyNotSatisfied,
  DivisionByZero,
  MissingInput,
  BadConfig,
  UnassignedAttribute,
  MissingState,
  ModelMismatch,
  ForgedOrWrongKey,
  ScriptExhausted,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure in the library is reported as an Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Parse failure in a policy string. Carries the byte offset and the tokens
/// the parser would have accepted there.
class PolicySyntaxError : public Error {
 public:
  PolicySyntaxError(std::size_t position, std::string expected, const std::string& what)
      : Error(Errc::SyntaxError, what), position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace dabe
