#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mzv/core.hpp"
#include "mzv/multisum.hpp"
#include "mzv/quadrature.hpp"
#include "mzv/series.hpp"
#include "mzv/symbolic.hpp"

namespace mzv::identities {

// ---------------------------------------------------------------------------
// Closed-form right-hand sides.  Beyond the symbolic atoms (rational, pi
// powers, log-2 powers, zeta, beta) two more payloads occur: the
// arithmetic-progression zeta sum_{k>=0} (step k + offset)^(-power), and a
// printed decimal that is only known to its printed places.

struct ArithProg {
  long step = 1;
  long offset = 1;
  long power = 2;
};

// value as printed, trusted to `places` decimal places (error 10^-places)
struct DecimalLiteral {
  Rational value;
  int places = 0;
};

// coeff * sqrt(radicand) * payload
struct ClosedTerm {
  Rational coeff = Rational(1);
  Rational radicand = Rational(1);
  std::variant<symbolic::Atom, ArithProg, DecimalLiteral> payload = symbolic::Atom{};
};

class ClosedExpr {
 public:
  ClosedExpr() = default;
  // implicit by design: most right-hand sides are plain symbolic combos
  ClosedExpr(const symbolic::Combo& combo);  // NOLINT(google-explicit-constructor)

  // "0.16227" or "-1.5" etc.; the error bound is one unit in the last
  // printed place (printed values may be truncated rather than rounded)
  static ClosedExpr decimal(const std::string& text);

  ClosedExpr& add(ClosedTerm t);
  const std::vector<ClosedTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  core::BoundedValue eval(const PrecisionContext& ctx) const;
  std::string to_string() const;

 private:
  std::vector<ClosedTerm> terms_;
};

// ---------------------------------------------------------------------------
// Left-hand evaluation plans: a rational-weighted sum of atomic evaluations
// (catalog integral, log-sine integral, series at a point, nested sum,
// closed-form family member).

struct QuadPlan {
  std::string id;
  std::vector<long> params;
};

struct LogSinePlan {
  long n = 1;
};

struct SeriesPlan {
  std::string stream;
  Rational x_squared = Rational(1);  // evaluated at x = sqrt(x_squared)
  series::TailPolicy policy = series::TailPolicy::kRequireTolerance;
  std::optional<long> max_terms;
};

struct SumPlan {
  multisum::SumKind kind = multisum::SumKind::kZeta;
  std::vector<long> parts;
  std::optional<long> n_truncation;
};

struct ClosedFormPlan {
  multisum::ClosedFamily family = multisum::ClosedFamily::kZeta2Rep;
  long n = 1;
};

using AtomicPlan = std::variant<QuadPlan, LogSinePlan, SeriesPlan, SumPlan, ClosedFormPlan>;
using Plan = std::vector<std::pair<Rational, AtomicPlan>>;

core::BoundedValue eval_plan(const Plan& plan, const PrecisionContext& ctx);

// ---------------------------------------------------------------------------
// Identity records and verification.

enum class Expectation { kVerified, kConjecture, kKnownDiscrepancy };
std::string expectation_name(Expectation e);

struct IdentityRecord {
  std::string id;
  Plan lhs;
  ClosedExpr rhs;  // for known discrepancies this is the printed claim
  // the value we actually compute, mandatory alongside a discrepancy claim
  std::optional<ClosedExpr> corrected;
  Expectation expectation = Expectation::kVerified;
  std::string note;
  std::string source;  // attribution label shown in reports
};

enum class Verdict {
  kPass,
  kFail,
  kFlagDiscrepancy,
  kConjectureSupported,
  kConjectureRefuted,
};
std::string verdict_name(Verdict v);

// PASS iff abs_diff <= error_budget, where the budget is
//   lhs error bound + rhs evaluation error + 10^(-digits+3).
// FLAG_DISCREPANCY requires expectation = KNOWN_DISCREPANCY, a miss by more
// than 1000x the budget, and agreement with the corrected expression.
struct VerificationResult {
  std::string id;
  Real lhs_value;
  Real rhs_value;
  Real abs_diff;
  Real error_budget;
  int digits_agreed = 0;
  Verdict verdict = Verdict::kFail;
};

// all records, sorted by id
const std::vector<IdentityRecord>& registry();
const IdentityRecord* find_record(const std::string& id);  // nullptr if unknown

VerificationResult verify(const IdentityRecord& rec, const PrecisionContext& ctx);
VerificationResult verify(const std::string& id, const PrecisionContext& ctx);

// empty filter means everything; '*' / '?' wildcards; output ordered by id
std::vector<VerificationResult> verify_all(const PrecisionContext& ctx,
                                           const std::string& filter = "");

bool glob_match(const std::string& pattern, const std::string& text);

// Invariance of the nested zeta sums under the duality involution, swept
// over every admissible index of weight <= max_weight.  Budgets combine the
// two truncation tails.
std::vector<VerificationResult> duality_check(long max_weight, const PrecisionContext& ctx);

}  // namespace mzv::identities
