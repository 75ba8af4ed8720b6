// Acceptance gate for the verification suite.  Each numbered criterion prints
// exactly one PASS/FAIL line; the exit status is the number of failures.
//
// Reference decimals here are frozen from an independent 50-digit computation
// and are deliberately literal: the point is to pin the library against
// something it did not produce itself.

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mzv/core.hpp"
#include "mzv/errors.hpp"
#include "mzv/identities.hpp"
#include "mzv/multisum.hpp"
#include "mzv/quadrature.hpp"
#include "mzv/series.hpp"
#include "mzv/symbolic.hpp"
#include "test_util.hpp"

using namespace mzv;
using identities::Verdict;
using symbolic::Atom;

namespace {

int g_failures = 0;

void line(int n, bool ok, const char* desc) {
  std::printf("ACCEPT %2d: %s - %s\n", n, ok ? "PASS" : "FAIL", desc);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// frozen references (50 digits)
const char* kPi28 = "1.2337005501361698273543113749845188919142124259051";
const char* kZeta2_4 = "0.41123351671205660911810379166150629730473747530170";
const char* kT3 = "1.0517997902646449997247708913225187419193630057979";  // 7 zeta(3)/8
const char* kZeta3_8 = "0.15025711289494928567496727018893124884562328654256";
const char* kCatalan = "0.91596559417721901505460351493238411077414937428167";
const char* kPi3_32 = "0.96894614625936938048363484584691860006954026768391";
const char* kThm3A2 = "0.38699560053943557616401919193825515813806419422840";
const char* kMubar21 = "0.19666373228250543161883599707825673300689062477445";

struct Suite {
  PrecisionContext c40;
  std::map<std::string, identities::VerificationResult> results;
  double verify_seconds = 0.0;

  const identities::VerificationResult* find(const std::string& id) const {
    auto it = results.find(id);
    return it == results.end() ? nullptr : &it->second;
  }
  bool passed(const std::string& id, int min_digits = 0) const {
    const auto* r = find(id);
    return r && r->verdict == Verdict::kPass && r->digits_agreed >= min_digits;
  }
  bool verdict_is(const std::string& id, Verdict v) const {
    const auto* r = find(id);
    return r && r->verdict == v;
  }
  // record passed and its computed value matches an independent reference
  bool pinned(const std::string& id, const char* ref, long tol10 = -35) const {
    const auto* r = find(id);
    return r && r->verdict == Verdict::kPass && r->digits_agreed >= 35 &&
           tu::close(r->lhs_value, tu::lit(ref), tol10);
  }
};

// true when every lhs component is a quadrature / log-sine / closed-form /
// tolerance-certified series evaluation and the rhs is an exact constant
// combination (no printed-decimal payloads): these are the records the
// 35-digit bar applies to.
bool high_precision_eligible(const identities::IdentityRecord& rec) {
  if (rec.expectation != identities::Expectation::kVerified) return false;
  for (const auto& term : rec.rhs.terms())
    if (std::holds_alternative<identities::DecimalLiteral>(term.payload)) return false;
  for (const auto& [coeff, atom] : rec.lhs) {
    (void)coeff;
    bool ok = std::visit(
        [](const auto& plan) -> bool {
          using T = std::decay_t<decltype(plan)>;
          if constexpr (std::is_same_v<T, identities::SumPlan>) {
            return false;
          } else if constexpr (std::is_same_v<T, identities::SeriesPlan>) {
            return plan.policy == series::TailPolicy::kRequireTolerance;
          } else {
            return true;
          }
        },
        atom);
    if (!ok) return false;
  }
  return true;
}

Atom log2_pi(int pi_pow) { return Atom{Atom::Base::kLog2, 1, pi_pow}; }
Atom zeta_pi(long arg, int pi_pow) { return Atom{Atom::Base::kZeta, arg, pi_pow}; }

bool combo_has(const symbolic::Combo& c, Atom a, long num, long den) {
  return c.coeff(a) == make_rational(num, den);
}

bool i_closed_tables_exact() {
  using multisum::I_closed_symbolic;
  bool ok = true;
  auto tbl = [&](long n, std::vector<std::pair<Atom, Rational>> expect) {
    symbolic::Combo c = I_closed_symbolic(n);
    if (c.terms().size() != expect.size()) ok = false;
    for (const auto& [atom, q] : expect)
      if (c.coeff(atom) != q) ok = false;
  };
  auto r = [](long n, long d) { return make_rational(n, d); };
  tbl(1, {{log2_pi(1), r(1, 2)}});
  tbl(2, {{log2_pi(2), r(1, 4)}, {zeta_pi(3, 0), r(-7, 8)}});
  tbl(3, {{log2_pi(3), r(1, 8)}, {zeta_pi(3, 1), r(-9, 16)}});
  tbl(4, {{log2_pi(4), r(1, 16)}, {zeta_pi(3, 2), r(-9, 16)}, {zeta_pi(5, 0), r(93, 32)}});
  tbl(5, {{log2_pi(5), r(1, 32)}, {zeta_pi(3, 3), r(-15, 32)}, {zeta_pi(5, 1), r(225, 64)}});
  tbl(6, {{log2_pi(6), r(1, 64)},
          {zeta_pi(3, 4), r(-45, 128)},
          {zeta_pi(5, 2), r(675, 128)},
          {zeta_pi(7, 0), r(-5715, 256)}});
  return ok;
}

bool repeated_family_tables_exact() {
  using multisum::ClosedFamily;
  using multisum::closed_form_symbolic;
  bool ok = true;
  // t(3) = 7 zeta(3)/8
  ok &= combo_has(closed_form_symbolic(ClosedFamily::kT32Rep, 0), zeta_pi(3, 0), 7, 8);
  // t(3,2) = (1/64)(3 pi^2 zeta(3) - 31 zeta(5))
  auto t1 = closed_form_symbolic(ClosedFamily::kT32Rep, 1);
  ok &= combo_has(t1, zeta_pi(3, 2), 3, 64) && combo_has(t1, zeta_pi(5, 0), -31, 64);
  // t(3,2,2) = (1/2048)(2 pi^4 zeta(3) - 60 pi^2 zeta(5) + 381 zeta(7))
  auto t2 = closed_form_symbolic(ClosedFamily::kT32Rep, 2);
  ok &= combo_has(t2, zeta_pi(3, 4), 1, 1024) && combo_has(t2, zeta_pi(5, 2), -15, 512) &&
        combo_has(t2, zeta_pi(7, 0), 381, 2048);
  // zeta(3) and zeta(3,2) = (1/2)(pi^2 zeta(3) - 11 zeta(5))
  ok &= combo_has(closed_form_symbolic(ClosedFamily::kZeta32Rep, 0), zeta_pi(3, 0), 1, 1);
  auto z1 = closed_form_symbolic(ClosedFamily::kZeta32Rep, 1);
  ok &= combo_has(z1, zeta_pi(3, 2), 1, 2) && combo_has(z1, zeta_pi(5, 0), -11, 2);
  return ok;
}

bool stream_doubling_sound() {
  using namespace series;
  auto c = tu::ctx(40);
  Real x = Real::of_rational(make_rational(1, 4), c.prec_bits());
  std::vector<StreamPtr> streams;
  for (const char* name : {"arcsin", "arcsin2_over_2", "arcsinh", "arctan", "arctanh",
                           "central_binom_gf", "apery_inv2", "apery_inv3_alt",
                           "cb_over_odd_pow3", "cb_over_odd_pow4"})
    streams.push_back(named_stream(name));
  for (unsigned long n = 1; n <= 5; ++n) streams.push_back(arcsin_pow_stream(n));
  for (const auto& s : streams) {
    auto lo = eval_stream(s, x, c, TailPolicy::kBestEffort, 25);
    auto hi = eval_stream(s, x, c, TailPolicy::kBestEffort, 100);
    if (!(abs(lo.value - hi.value) <= lo.tail_bound)) return false;
  }
  return true;
}

bool sum_doubling_sound() {
  using namespace multisum;
  auto c = tu::ctx(30);
  for (SumKind k : {SumKind::kZeta, SumKind::kT, SumKind::kMu, SumKind::kMuBar}) {
    auto lo = multisum_eval(k, MultiIndex::parse("2,1"), c, 2000);
    auto hi = multisum_eval(k, MultiIndex::parse("2,1"), c, 8000);
    if (!(abs(lo.value - hi.value) <= lo.tail_bound)) return false;
  }
  auto lo = multisum_eval(SumKind::kZeta, MultiIndex::parse("3,2,2"), c, 1000);
  auto hi = multisum_eval(SumKind::kZeta, MultiIndex::parse("3,2,2"), c, 4000);
  return abs(lo.value - hi.value) <= lo.tail_bound;
}

}  // namespace

int main() {
  Suite s;
  s.c40 = tu::ctx(40);

  {
    auto t0 = std::chrono::steady_clock::now();
    for (auto& r : identities::verify_all(s.c40)) s.results.emplace(r.id, std::move(r));
    s.verify_seconds = seconds_since(t0);
  }

  // 1: the whole registry verifies at 40 digits, with the high-precision
  //    records agreeing to at least 35, inside five minutes
  {
    bool ok = s.verify_seconds < 300.0;
    long fails = 0;
    for (const auto& [id, r] : s.results)
      if (r.verdict == Verdict::kFail) ++fails;
    ok = ok && fails == 0;
    for (const auto& rec : identities::registry()) {
      if (!high_precision_eligible(rec)) continue;
      const auto* r = s.find(rec.id);
      if (!r || r->digits_agreed < 35) ok = false;
    }
    line(1, ok, "full 40-digit verification: no failures, quadrature/closed-form records >= 35 digits, under 5 minutes");
  }

  // 2: the arcsine moment pair around the Basel value
  line(2, s.pinned("basel_arcsin", kPi28) && s.pinned("basel_arcsin2_even", kZeta2_4),
       "arcsine moment integrals give pi^2/8 and zeta(2)/4 to 35 digits");

  // 3: odd/even split of the cubic log-sine moments
  line(3, s.pinned("thm1_zeta3_odd", kT3) && s.pinned("thm1_zeta3_even", kZeta3_8),
       "odd/even arcsin^3 moments give 7zeta(3)/8 and zeta(3)/8 to 35 digits");

  // 4: the arctangent/arccotangent family
  line(4,
       s.pinned("thm2_catalan", kCatalan) && s.pinned("thm2_pi3_32", kPi3_32) &&
           s.pinned("thm3_arctan_arccot", kT3) && s.pinned("thm3_A1", kCatalan) &&
           s.pinned("thm3_A2", kThm3A2),
       "arctan/arccot integrals hit G, pi^3/32, 7zeta(3)/8, G, piG/2 - 7zeta(3)/8 to 35 digits");

  // 5: I(1..6) by direct quadrature, log-sine transform and closed form
  {
    bool ok = i_closed_tables_exact();
    for (long n = 1; n <= 6 && ok; ++n) {
      auto q = quadrature::integral_by_id("I_n", {n}, s.c40);
      auto ls = quadrature::log_sine_check(n, s.c40);
      auto cf = multisum::I_closed(n, s.c40);
      Real tol = tu::pow10(-35, s.c40.prec_bits());
      ok = abs(q.value - ls.value) <= tol && abs(q.value - cf.value) <= tol &&
           abs(ls.value - cf.value) <= tol;
      ok = ok && s.passed("I_" + std::to_string(n) + "_closed_vs_quad", 35);
    }
    line(5, ok, "arcsin-power integrals I(1..6): three evaluation routes agree to 35 digits, closed forms coefficient-exact");
  }

  // 6: zeta(3,{2}^n) and t(3,{2}^n) closed forms against quadrature and sums
  {
    bool ok = repeated_family_tables_exact();
    for (int n = 0; n <= 2; ++n) {
      ok = ok && s.passed("thm5_t_" + std::to_string(n), 35);
      ok = ok && s.passed("thm5_zeta_" + std::to_string(n), 35);
      ok = ok && s.passed("thm5_t_sum_" + std::to_string(n));
      ok = ok && s.passed("thm5_zeta_sum_" + std::to_string(n));
    }
    line(6, ok, "t(3,{2}^n) and zeta(3,{2}^n) closed forms: coefficient-exact, 35-digit quadrature match, nested sums within budget");
  }

  // 7: duality sweep and the depth-two Euler sum by brute force
  {
    auto t0 = std::chrono::steady_clock::now();
    auto dual = identities::duality_check(6, tu::ctx(15));
    double dt = seconds_since(t0);
    bool ok = dt < 120.0 && dual.size() == 31;
    for (const auto& r : dual) ok = ok && r.verdict == Verdict::kPass;
    auto eg = multisum::multisum_eval(multisum::SumKind::kZeta,
                                      multisum::MultiIndex::parse("2,1"), tu::ctx(30), 100000);
    ok = ok && eg.certified_digits >= 3 && s.passed("euler_goldbach");
    line(7, ok, "duality holds across all admissible indices of weight <= 6 in under 2 minutes; zeta(2,1) certified to 3+ digits at N=10^5");
  }

  // 8: parity decompositions and the two depth-two parity constants
  {
    bool ok = true;
    for (const char* id : {"parity_decomposition_2_1", "parity_decomposition_2_2",
                           "parity_decomposition_3_1", "parity_decomposition_3_2"})
      ok = ok && s.passed(id);
    const auto* m21 = s.find("mubar21_value");
    ok = ok && m21 && m21->verdict == Verdict::kPass &&
         abs(m21->lhs_value - tu::lit(kMubar21)) <= m21->error_budget;
    ok = ok && s.passed("ramanujan_G1", 5);
    line(8, ok, "parity decompositions recombine; mubar(2,1) and the 0.16227 constant confirmed");
  }

  // 9: the two-parameter family tying both parity sums together
  {
    bool ok = s.passed("thm6_2mu21") && s.passed("thm6_4mu211");
    for (int n = 0; n <= 3; ++n)
      for (int r = 0; r <= 3; ++r)
        ok = ok && s.passed("thm6_pair_" + std::to_string(n) + "_" + std::to_string(r));
    for (int r = 0; r <= 2; ++r)
      for (int n = 0; n <= 2; ++n)
        ok = ok && s.passed("mu_general_" + std::to_string(r) + "_" + std::to_string(n), 3);
    line(9, ok, "mu-sum reflection family holds for 0 <= n,r <= 3; integral representation certified to 3+ digits");
  }

  // 10: the flagged discrepancies are flagged, with the factorial ratios shown
  {
    bool ok = s.verdict_is("arctan_log3", Verdict::kFlagDiscrepancy) &&
              s.verdict_is("arctan_log5", Verdict::kFlagDiscrepancy) &&
              s.verdict_is("ablinger_16_4", Verdict::kFlagDiscrepancy) &&
              s.passed("ablinger_16_3", 35);
    auto ratio_is = [&](const char* id, long want) {
      const auto* rec = identities::find_record(id);
      if (!rec || !rec->corrected) return false;
      auto printed = rec->rhs.eval(s.c40);
      auto computed = rec->corrected->eval(s.c40);
      Real r = printed.value / computed.value;
      return abs(r - Real::of_long(want, s.c40.prec_bits())) <=
             tu::pow10(-20, s.c40.prec_bits());
    };
    ok = ok && ratio_is("arctan_log3", 6) && ratio_is("arctan_log5", 120);
    line(10, ok, "published-constant discrepancies flagged (3! and 5! ratios confirmed); the companion identity passes at 35 digits");
  }

  // 11: the conjectured arcsin log^2 integral, by quadrature and by series
  {
    const auto* q = s.find("conjecture_arcsin_log2");
    const auto* ser = s.find("conjecture_arcsin_log2_series");
    bool ok = q && q->verdict == Verdict::kConjectureSupported && q->digits_agreed >= 25;
    ok = ok && ser && ser->verdict == Verdict::kConjectureSupported && ser->digits_agreed >= 10;
    line(11, ok, "conjectured arcsin log^2 value supported to 25+ digits by quadrature and 10+ by series");
  }

  // 12: series machinery soundness: exact coefficients, moment cross-check,
  //     and tail bounds that survive doubling the truncation point
  {
    bool ok = true;
    auto s1 = series::arcsin_pow_stream(1);
    auto s2 = series::arcsin_pow_stream(2);
    for (long k = 0; k <= 20; ++k) {
      ok = ok && s1->coeff(k) == make_rational(1, 2 * k + 1);
      Rational want2 = k == 0 ? Rational(0) : make_rational(1, 4 * k * k);
      ok = ok && s2->coeff(k) == want2;
    }
    auto c = tu::ctx(40);
    for (long m = 0; m <= 8 && ok; ++m) {
      auto direct = quadrature::integral_by_id("wallis", {m}, c);
      auto subbed = quadrature::integral_by_id("w_moment", {m}, c);
      ok = abs(direct.value - subbed.value) <=
           direct.error_estimate + subbed.error_estimate + tu::pow10(-45, c.prec_bits());
    }
    ok = ok && stream_doubling_sound() && sum_doubling_sound();
    line(12, ok, "stream coefficients exact through k=20; averaged moments match; tail bounds sound under doubled truncation");
  }

  std::printf("acceptance: %d of 12 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
