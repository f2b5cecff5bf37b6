#pragma once

#include <stdexcept>
#include <string>

namespace numgram {

enum class Errc {
  OutOfRange,
  Inexpressible,
  UnknownMorpheme,
  UnknownToken,
  AmbiguousParse,
  NoParse,
  EmptyInput,
  InvalidSystem,
  InvalidCondition,
  MissingOperatorSurface,
  MissingMetadata,
  EmptyAfterFilter,
  IoFailure,
  ConstraintUnsatisfiable,
  IdentifiabilityFailure,
  InvalidCount,
  UnsupportedBase,
  NegativeIntermediate,
  ResourceBudgetExceeded,
  InvalidArgument,
};

const char* errcName(Errc code);

/// Domain error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errcName(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace numgram
