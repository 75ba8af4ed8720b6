#pragma once

#include <stdexcept>
#include <string>

namespace mzv {

// A documented precondition was violated (bad index, bad name, x out of
// range, ...).  The caller can fix the call site.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numeric evaluation failed: divergence detected, a cap was exhausted
// before the tolerance was met, or a non-finite value appeared where one
// must not.  Retrying with the same arguments will not help; a bigger
// budget (digits / series_cap / quad_max_level) might.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mzv
