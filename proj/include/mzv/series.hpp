#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzv/core.hpp"
#include "mzv/rational.hpp"

namespace mzv::series {

// Normal forms for the power series this library manipulates.  With
// cb(k) = binom(2k,k)/4^k, a stream with coefficients a(k) denotes
//
//   kOddBinom      (pi/2)^p * sum_k cb(k)   * a(k) * x^(2k+1)
//   kEvenInvBinom  (pi/2)^p * sum_k a(k)/cb(k)     * x^(2k)
//   kPlainOdd      (pi/2)^p * sum_k a(k)           * x^(2k+1)
//   kPlainEven     (pi/2)^p * sum_k a(k)           * x^(2k)
//
// The averaging operator W f(x) = integral_0^1 f(xu) du/sqrt(1-u^2) maps the
// first form to the third (a(k) -> a(k)/(2k+1)) and the second to the fourth
// (picking up one factor of pi/2), which is why the binomial weight is kept
// out of a(k).
enum class FormTag { kOddBinom, kEvenInvBinom, kPlainOdd, kPlainEven };

std::string form_tag_name(FormTag t);

class CoefficientStream {
 public:
  using ExactFn = std::function<Rational(long)>;
  // optional floating fast path: (k, precision) -> a(k); must agree with
  // the exact generator to working precision
  using RealFn = std::function<Real(long, mpfr_prec_t)>;

  CoefficientStream(FormTag tag, int pi_power, std::string label, ExactFn exact,
                    RealFn fast = nullptr)
      : tag_(tag),
        pi_power_(pi_power),
        label_(std::move(label)),
        exact_(std::move(exact)),
        fast_(std::move(fast)) {}

  FormTag form_tag() const { return tag_; }
  int pi_power() const { return pi_power_; }
  const std::string& label() const { return label_; }

  // exact coefficient a(k); memoized, thread-safe
  Rational coeff(long k) const;

  // a(k) as a Real; uses the fast path when installed, otherwise converts
  // the exact coefficient
  Real coeff_real(long k, mpfr_prec_t prec) const;

  // x-power carried by term k (2k+1 for odd forms, 2k for even forms)
  long term_power(long k) const;

  // full literal coefficient of x^{term_power(k)}, binomial weight and all
  // (but not the (pi/2)^p prefactor, which is irrational for p odd)
  Rational literal_coeff(long k) const;

 private:
  FormTag tag_;
  int pi_power_;
  std::string label_;
  ExactFn exact_;
  RealFn fast_;

  mutable std::mutex memo_mu_;
  mutable std::vector<std::optional<Rational>> memo_;
};

using StreamPtr = std::shared_ptr<const CoefficientStream>;

struct SeriesValue {
  Real value;
  Real tail_bound;
  long terms_used = 0;
};

// What to do when series_cap is reached before the working tolerance:
// kRequireTolerance throws (the default contract); kBestEffort returns the
// partial sum with its tail bound (used by identity checks that budget by
// tail bound).
enum class TailPolicy { kRequireTolerance, kBestEffort };

// binom(2k,k) / 2^(2k), exact
Rational central_binomial_ratio(unsigned long k);

// integral_0^{pi/2} sin^n x dx: (pi/2)*cb(m) for n=2m, (2m)!!/(2m+1)!! for
// n=2m+1
core::BoundedValue wallis(unsigned long n, const PrecisionContext& ctx);
// the exact content behind wallis(): {rational factor, power of pi}
std::pair<Rational, int> wallis_closed(unsigned long n);

// arcsin | arcsin2_over_2 | arcsinh | arctan | arctanh
StreamPtr elem_stream(const std::string& name);

// arcsin^n x / n! for n >= 1 (n = 1, 2 coincide with the elementary
// streams); coefficients are nested odd/even reciprocal-square sums built
// by an incremental prefix-sum DP
StreamPtr arcsin_pow_stream(unsigned long n);

// elem names plus: central_binom_gf (sum binom(2n,n) x^{2n}),
// apery_inv2 (sum 1/(n^2 binom(2n,n)) x^{2n}),
// apery_inv3_alt (sum (-1)^(n-1)/(n^3 binom(2n,n)) x^{2n}),
// cb_over_odd_pow3 / cb_over_odd_pow4 (kOddBinom with a = 1/(2k+1)^s)
StreamPtr named_stream(const std::string& name);

// W averaging: kOddBinom -> kPlainOdd with a/(2k+1); kEvenInvBinom ->
// kPlainEven with pi_power+1.  Anything else is a domain error.
StreamPtr w_transform(const StreamPtr& s);

// integral_0^x f(t)/t dt termwise: divides the coefficient of x^m by m.
// Even-form streams must have a(0) = 0.
StreamPtr over_x_integrate(const StreamPtr& s);

// Evaluate at x in [0,1].  At x = 1 the coefficient decay is probed first
// and divergent streams are rejected.  The tail bound is a geometric
// majorant fitted to the last terms, times an empirical safety factor 4.
SeriesValue eval_stream(const StreamPtr& s, const Real& x, const PrecisionContext& ctx,
                        TailPolicy policy = TailPolicy::kRequireTolerance,
                        std::optional<long> max_terms = std::nullopt);

}  // namespace mzv::series
