#pragma once

#include <stdexcept>
#include <string>

namespace sebn {

/// A caller broke a documented precondition (empty node set, size mismatch,
/// candidate parent that would create a cycle, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A covariance matrix could not be factorized even after jitter escalation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input files (CSV, graph JSON, sweep configs).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sebn
