#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mzv/core.hpp"
#include "mzv/symbolic.hpp"

namespace mzv::multisum {

// A composition (i_1, ..., i_k) of positive integers.  The first entry is
// bound to the largest summation variable in every sum kind handled here.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<long> parts);

  // "3,2,2" or with repetition shorthand "3,{2}^4"
  static MultiIndex parse(const std::string& text);
  // ({m}^n) -- requires n >= 1
  static MultiIndex repeat(long m, long n);

  const std::vector<long>& parts() const { return parts_; }
  long weight() const;
  int depth() const { return static_cast<int>(parts_.size()); }
  // leading exponent at least 2: the sum converges and the dual is defined
  bool admissible() const { return parts_.front() >= 2; }
  std::string to_string() const;

  bool operator==(const MultiIndex& o) const { return parts_ == o.parts_; }

 private:
  std::vector<long> parts_;
};

// The duality involution on admissible indices: decompose as
// (a_1+1, {1}^{b_1-1}, ..., a_k+1, {1}^{b_k-1}) and emit
// (b_k+1, {1}^{a_k-1}, ..., b_1+1, {1}^{a_1-1}).
MultiIndex dual_index(const MultiIndex& i);

// Which congruence class each summation variable ranges over:
//   kZeta  - none
//   kT     - every variable odd
//   kMu    - counting positions from the innermost (smallest) variable as
//            j = 1, variable j is restricted to n == j (mod 2)
//   kMuBar - n == j+1 (mod 2)
// For kMu/kMuBar the index is written largest-variable-first, so parts[0]
// (which must be >= 2) sits on the variable of highest parity position.
enum class SumKind { kZeta, kT, kMu, kMuBar };

SumKind parse_kind(const std::string& name);
std::string kind_name(SumKind k);

struct MultiSumValue {
  Real value;
  Real tail_bound;
  long n_truncation = 0;
  int certified_digits = 0;
};

// Truncated nested summation with all variables <= N, evaluated by a single
// streaming pass (prefix sums of the inner chains), plus a tail bound for
// the discarded outer range.  N defaults to min(ctx.series_cap, 10^5) and
// can be raised explicitly when more certified digits are needed.
MultiSumValue multisum_eval(SumKind kind, const MultiIndex& i, const PrecisionContext& ctx,
                            std::optional<long> n_override = std::nullopt);

enum class ClosedFamily {
  kZeta2Rep,   // zeta({2}^n)      = pi^(2n)/(2n+1)!
  kT2Rep,      // t({2}^n)         = (pi/2)^(2n)/(2n)!
  kZeta4Rep,   // zeta({4}^n)      = 2^(2n+1) pi^(4n)/(4n+2)!
  kT4Rep,      // t({4}^n)         = pi^(4n)/(2^(2n) (4n)!)
  kZeta32Rep,  // zeta(3,{2}^n)    via I-integral combination
  kT32Rep,     // t(3,{2}^n)       via I-integral combination
};

ClosedFamily parse_family(const std::string& name);
std::string family_name(ClosedFamily f);

// Exact symbolic value (rational combination of pi powers, log 2 and odd
// zeta values).  n >= 1 for the pure-repetition families, n >= 0 for the
// (3,{2}^n) families.
symbolic::Combo closed_form_symbolic(ClosedFamily f, long n);
core::BoundedValue closed_form(ClosedFamily f, long n, const PrecisionContext& ctx);

// integral_0^1 arcsin^n(x)/x dx as an exact combination: for odd n = 2m+1
//   (n!/2^n) * sum_{j=0..m} (-1)^j pi^(n-2j) eta(2j+1)/(n-2j)!
// and for even n = 2m the same sum over j <= m-1 plus the extra term
//   (-1)^m * 2 * (1-2^(-n-1)) * zeta(n+1),
// with eta(1) = log 2, eta(2j+1) = (1-2^(-2j)) zeta(2j+1).
symbolic::Combo I_closed_symbolic(long n);
core::BoundedValue I_closed(long n, const PrecisionContext& ctx);

}  // namespace mzv::multisum
