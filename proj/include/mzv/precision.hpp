#pragma once

#include <mpfr.h>

#include "mzv/errors.hpp"

namespace mzv {

// Precision request threaded through every evaluation.  `digits` is what
// the caller wants certified; all internal arithmetic runs at
// digits + guard_digits decimal digits.
struct PrecisionContext {
  int digits = 30;
  int guard_digits = 10;
  long series_cap = 100000;  // hard cap on direct-summation term counts
  int quad_max_level = 10;   // tanh-sinh level-doubling cap

  PrecisionContext() = default;

  PrecisionContext(int digits_, int guard_digits_ = 10, long series_cap_ = 100000,
                   int quad_max_level_ = 10)
      : digits(digits_),
        guard_digits(guard_digits_),
        series_cap(series_cap_),
        quad_max_level(quad_max_level_) {
    validate();
  }

  void validate() const {
    if (digits < 10) throw DomainError("PrecisionContext: digits must be >= 10");
    if (guard_digits < 10) throw DomainError("PrecisionContext: guard_digits must be >= 10");
    if (series_cap < 100) throw DomainError("PrecisionContext: series_cap must be >= 100");
    if (quad_max_level < 5) throw DomainError("PrecisionContext: quad_max_level must be >= 5");
  }

  int working_digits() const { return digits + guard_digits; }

  // bits for the working decimal precision, with a little slack for
  // rounding noise in long dependency chains
  mpfr_prec_t prec_bits() const {
    // log2(10) = 3.3219...
    return static_cast<mpfr_prec_t>(working_digits() * 3.3219280948873623 + 24);
  }
};

}  // namespace mzv
