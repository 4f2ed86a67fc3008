#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzyfuse {

enum class ErrorCode {
  InvalidDensity,
  NoAdmissibleLambda,
  IndexOutOfRange,
  DuplicateIndex,
  ShapeMismatch,
  LengthMismatch,
  InvalidConfig,
  NonFiniteFitness,
  FileNotFound,
  RaggedRows,
  NonNumericCell,
  TooFewRows,
  EmptyFile,
  InvalidModel,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fuzzyfuse
