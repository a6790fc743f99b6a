#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace irredcert {

/// Raised when an operation's precondition on its inputs is violated
/// (zero polynomial where a nonzero one is required, degenerate matrix, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Outcome of a verification step. A failed check carries the name of the
/// first step that did not hold, e.g. "lpfw.cofactor_bound".
class CheckResult {
 public:
  static CheckResult pass() { return CheckResult(); }
  static CheckResult fail(std::string what) { return CheckResult(std::move(what)); }

  bool ok() const { return failure_.empty(); }
  explicit operator bool() const { return ok(); }
  const std::string& failure() const { return failure_; }

 private:
  CheckResult() = default;
  explicit CheckResult(std::string what) : failure_(std::move(what)) {
    if (failure_.empty()) failure_ = "unspecified";
  }

  std::string failure_;
};

}  // namespace irredcert
