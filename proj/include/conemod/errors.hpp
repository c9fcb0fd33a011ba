#pragma once

#include <stdexcept>
#include <string>

namespace conemod {

// Error taxonomy shared by the library and the CLI. Validation-type errors
// map to exit code 1, internal inconsistencies to exit code 2.
enum class ErrorKind {
  Validation,           // malformed input, bad config, bad preset name
  EndpointCollision,    // window endpoint or weight sits on a critical rate
  AssumptionViolation,  // indicial polynomial with repeated or non-real roots
  Ellipticity,          // vanishing leading symbol coefficient
  Domain,               // argument outside mathematical domain (e.g. negative eigenvalue)
  Discretization,       // grid too coarse for the requested derivative order
  Precondition,         // operator/matrix precondition failed (J^2 != -I, ...)
  PairingFailure,       // eigenvalue could not be matched to its dual
  UnsupportedRange,     // End-twist outside [-3, 0]
  InsufficientData,     // stability (or overrides) missing for a cohomology query
  RateWindow,           // mu outside the admissible interval (-1, mu_bar)
  Inconsistency,        // internal cross-check failed (Euler mismatch, negative coker, ...)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int exit_code() const { return kind_ == ErrorKind::Inconsistency ? 2 : 1; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace conemod
