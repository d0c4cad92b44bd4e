#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oinfty {

enum class ErrorKind {
  Validation,
  NotFinite,
  SizeLimit,
  BudgetExceeded,
  UnsupportedRepresentation,
  ConditionNotViolated,
  InternalInvariantBroken,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The message always names the
/// offending datum so the CLI can print it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace oinfty
