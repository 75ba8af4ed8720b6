#pragma once

#include <gmpxx.h>

#include <string>

namespace mzv {

// Exact rational arithmetic on top of GMP's mpq_class.  Arithmetic results
// are always canonical (lowest terms, positive denominator); raw two-argument
// construction is not, which is why call sites go through make_rational().
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// base^e with e possibly negative (base must be nonzero for e < 0)
Rational rat_pow(const Rational& base, long e);

Rational binomial_rat(unsigned long n, unsigned long k);
Rational factorial_rat(unsigned long n);
Rational inv_factorial(unsigned long n);

// B_n (B_1 = -1/2).  Computed once via the standard recurrence
//   sum_{j=0}^{m} C(m+1, j) B_j = 0
// and cached; thread-safe.
Rational bernoulli(unsigned long n);

// "5/16", "-3", ...
std::string to_string(const Rational& q);

}  // namespace mzv
