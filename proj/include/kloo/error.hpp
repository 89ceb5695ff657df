#pragma once

#include <stdexcept>
#include <string>

namespace kloo {

enum class ErrorCode {
  InvalidArgument,
  ModulusMismatch,
  DimensionMismatch,
  FieldMismatch,
  NotAUnit,
  NotInvertible,
  EvenCharacteristic,
  TooLarge,
  MalformedComponent,
  InexactDivision,
  NotRegularSemisimple,
  PreconditionFailed,
  BothZero,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kloo
