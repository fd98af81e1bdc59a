#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdmc {

enum class ErrorKind {
  NonAssociative,
  NotAGroup,
  UnknownBuiltin,
  BadGroupSpec,
  SizeBound,
  ElementOutOfRange,
  NotASubgroup,
  WrongAmbient,
  DegreeOverflow,
  NotACocycle,
  NotTrivializing,
  FormulaNotClosed,
  Inadmissible,
  ModulusMismatch,
  UsageError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine carries a kind so callers (the CLI in
/// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tdmc
