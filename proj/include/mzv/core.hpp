#pragma once

#include <string>

#include "mzv/precision.hpp"
#include "mzv/real.hpp"

namespace mzv::core {

// Every numeric routine in this library returns a value together with a
// nonnegative absolute error bound.
struct BoundedValue {
  Real value;
  Real error;
};

enum class NamedConstant { kPi, kLog2, kCatalan };

NamedConstant parse_constant_name(const std::string& name);  // "pi" | "log2" | "catalan"
std::string constant_name(NamedConstant c);

BoundedValue constant(NamedConstant which, const PrecisionContext& ctx);

// zeta(s) for integer s >= 2: direct sum to N = max(50, digits) terms plus
// an Euler-Maclaurin tail with enough Bernoulli terms that the first
// omitted one is below 10^-(digits+guard).
BoundedValue zeta_int(long s, const PrecisionContext& ctx);

// eta(j) for j >= 1; eta(1) = log 2, else (1 - 2^{1-j}) zeta(j)
BoundedValue eta_int(long j, const PrecisionContext& ctx);

// Dirichlet beta(s) for integer s >= 2 via the Cohen-Rodriguez
// Villegas-Zagier alternating-series acceleration (terms 1/(2k+1)^s are
// moments of a positive measure, so the (3+sqrt 8)^-n error bound applies).
BoundedValue beta_int(long s, const PrecisionContext& ctx);

// sum_{k>=0} (step*k + offset)^{-power} for step,offset >= 1, power >= 2,
// by the same direct-sum + Euler-Maclaurin scheme zeta_int uses.
BoundedValue arith_prog_sum(long step, long offset, long power, const PrecisionContext& ctx);

// Values above are memoized per (function, argument, precision); this
// clears the cache (tests use it to measure cold evaluation).
void clear_constant_cache();

}  // namespace mzv::core
