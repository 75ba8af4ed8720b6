#include "mzv/series.hpp"

#include <cmath>
#include <map>
#include <set>

#include "mzv/errors.hpp"

namespace mzv::series {

std::string form_tag_name(FormTag t) {
  switch (t) {
    case FormTag::kOddBinom:
      return "ODD_BINOM";
    case FormTag::kEvenInvBinom:
      return "EVEN_INVBINOM";
    case FormTag::kPlainOdd:
      return "PLAIN_ODD";
    case FormTag::kPlainEven:
      return "PLAIN_EVEN";
  }
  return "?";
}

Rational central_binomial_ratio(unsigned long k) {
  static std::mutex mu;
  static std::vector<Rational> memo{Rational(1)};
  std::lock_guard<std::mutex> lk(mu);
  while (memo.size() <= k) {
    long m = static_cast<long>(memo.size());
    memo.push_back(memo.back() * make_rational(2 * m - 1, 2 * m));
  }
  return memo[k];
}

Rational CoefficientStream::coeff(long k) const {
  if (k < 0) throw DomainError("negative series index");
  {
    std::lock_guard<std::mutex> lk(memo_mu_);
    if (static_cast<size_t>(k) < memo_.size() && memo_[k]) return *memo_[k];
  }
  // compute outside the lock: the generator may consult other streams
  Rational v = exact_(k);
  std::lock_guard<std::mutex> lk(memo_mu_);
  if (memo_.size() <= static_cast<size_t>(k)) memo_.resize(k + 1);
  memo_[k] = std::move(v);
  return *memo_[k];
}

Real CoefficientStream::coeff_real(long k, mpfr_prec_t prec) const {
  if (fast_) return fast_(k, prec);
  return Real::of_rational(coeff(k), prec);
}

long CoefficientStream::term_power(long k) const {
  switch (tag_) {
    case FormTag::kOddBinom:
    case FormTag::kPlainOdd:
      return 2 * k + 1;
    default:
      return 2 * k;
  }
}

Rational CoefficientStream::literal_coeff(long k) const {
  Rational a = coeff(k);
  switch (tag_) {
    case FormTag::kOddBinom:
      return a * central_binomial_ratio(static_cast<unsigned long>(k));
    case FormTag::kEvenInvBinom:
      return a / central_binomial_ratio(static_cast<unsigned long>(k));
    default:
      return a;
  }
}

std::pair<Rational, int> wallis_closed(unsigned long n) {
  if (n % 2 == 0) {
    // (pi/2) * cb(m)
    return {central_binomial_ratio(n / 2) * make_rational(1, 2), 1};
  }
  // (2m)!!/(2m+1)!! = 1/((2m+1) cb(m))
  unsigned long m = n / 2;
  Rational q = Rational(1) / (Rational(static_cast<long>(2 * m + 1)) *
                              central_binomial_ratio(m));
  return {q, 0};
}

core::BoundedValue wallis(unsigned long n, const PrecisionContext& ctx) {
  const mpfr_prec_t prec = ctx.prec_bits();
  auto [q, p] = wallis_closed(n);
  Real v = Real::of_rational(q, prec);
  if (p != 0) v = v * pow_si(Real::pi(prec), p);
  Real err = mul_2si(max(abs(v), Real::of_long(1, prec)), -static_cast<long>(prec) + 4);
  return {v, err};
}

StreamPtr elem_stream(const std::string& name) {
  if (name == "arcsin") {
    return std::make_shared<CoefficientStream>(
        FormTag::kOddBinom, 0, "arcsin",
        [](long k) { return make_rational(1, 2 * k + 1); });
  }
  if (name == "arcsin2_over_2") {
    return std::make_shared<CoefficientStream>(
        FormTag::kEvenInvBinom, 0, "arcsin2_over_2", [](long k) {
          return k == 0 ? Rational(0) : make_rational(1, 4 * k * k);
        });
  }
  if (name == "arcsinh") {
    return std::make_shared<CoefficientStream>(
        FormTag::kOddBinom, 0, "arcsinh",
        [](long k) { return make_rational(k % 2 ? -1 : 1, 2 * k + 1); });
  }
  if (name == "arctan") {
    return std::make_shared<CoefficientStream>(
        FormTag::kPlainOdd, 0, "arctan",
        [](long k) { return make_rational(k % 2 ? -1 : 1, 2 * k + 1); });
  }
  if (name == "arctanh") {
    return std::make_shared<CoefficientStream>(
        FormTag::kPlainOdd, 0, "arctanh",
        [](long k) { return make_rational(1, 2 * k + 1); });
  }
  throw DomainError("unknown elementary stream '" + name + "'");
}

namespace {

// Shared prefix-sum state for the arcsin-power coefficient recurrences.
//
// Odd n = 2m-1:  a(k) = T_{m-1}(k)/(2k+1),
//   T_0 = 1,  T_j(k) = sum_{0 <= i < k} T_{j-1}(i)/(2i+1)^2
// Even n = 2m:   a(k) = S_{m-1}(k)/(2k)^2 (a(0) = 0),
//   S_0 = 1,  S_j(k) = sum_{0 < i < k} S_{j-1}(i)/(2i)^2
//
// Advancing k by one touches each level once, so filling the table to K
// costs O(m K) ring operations.  An exact (rational) table serves the
// coefficient API; per-precision floating tables serve deep evaluation,
// where exact denominators would snowball.
struct PowDp {
  long m = 0;  // number of levels is m-1
  bool even = false;

  std::mutex mu;
  long done = -1;
  std::vector<Rational> cum;  // cum[j], j = 1..m-1
  std::vector<Rational> a;

  struct FloatSide {
    long done = -1;
    std::vector<Real> cum;
    std::vector<Real> a;
  };
  std::map<mpfr_prec_t, FloatSide> floats;

  void advance_exact(long k) {
    if (cum.empty()) cum.assign(m, Rational(0));  // index 0 unused
    std::vector<Rational> cur(m);
    for (long kk = done + 1; kk <= k; ++kk) {
      cur[0] = 1;
      for (long j = 1; j < m; ++j) cur[j] = cum[j];
      Rational w;  // 1/(2kk)^2 resp. 1/(2kk+1)^2
      if (even) {
        a.push_back(kk == 0 ? Rational(0)
                            : cur[m - 1] * make_rational(1, 4 * kk * kk));
        if (kk > 0) w = make_rational(1, 4 * kk * kk);
      } else {
        a.push_back(cur[m - 1] * make_rational(1, 2 * kk + 1));
        w = make_rational(1, (2 * kk + 1) * (2 * kk + 1));
      }
      if (!even || kk > 0)
        for (long j = 1; j < m; ++j) cum[j] += cur[j - 1] * w;
    }
    if (k > done) done = k;
  }

  void advance_float(long k, mpfr_prec_t prec, FloatSide& f) {
    if (f.cum.empty()) {
      f.cum.reserve(m);
      for (long j = 0; j < m; ++j) {
        Real z(prec);
        mpfr_set_zero(z.raw(), 1);
        f.cum.push_back(std::move(z));
      }
    }
    std::vector<Real> cur(m);
    for (long kk = f.done + 1; kk <= k; ++kk) {
      cur[0] = Real::of_long(1, prec);
      for (long j = 1; j < m; ++j) cur[j] = f.cum[j];
      if (even) {
        if (kk == 0) {
          Real z(prec);
          mpfr_set_zero(z.raw(), 1);
          f.a.push_back(std::move(z));
        } else {
          f.a.push_back(cur[m - 1] / (4 * kk * kk));
        }
        if (kk > 0) {
          Real w = 1 / Real::of_long(4 * kk * kk, prec);
          for (long j = 1; j < m; ++j) f.cum[j] += cur[j - 1] * w;
        }
      } else {
        f.a.push_back(cur[m - 1] / (2 * kk + 1));
        Real w = 1 / Real::of_long((2 * kk + 1) * (2 * kk + 1), prec);
        for (long j = 1; j < m; ++j) f.cum[j] += cur[j - 1] * w;
      }
    }
    if (k > f.done) f.done = k;
  }
};

}  // namespace

StreamPtr arcsin_pow_stream(unsigned long n) {
  if (n < 1) throw DomainError("arcsin_pow_stream requires n >= 1");
  if (n == 1) return elem_stream("arcsin");
  if (n == 2) return elem_stream("arcsin2_over_2");

  auto dp = std::make_shared<PowDp>();
  dp->even = (n % 2 == 0);
  dp->m = dp->even ? static_cast<long>(n / 2) : static_cast<long>((n + 1) / 2);

  auto exact = [dp](long k) {
    std::lock_guard<std::mutex> lk(dp->mu);
    dp->advance_exact(k);
    return dp->a[k];
  };
  auto fast = [dp](long k, mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lk(dp->mu);
    auto& f = dp->floats[prec];
    dp->advance_float(k, prec, f);
    return f.a[k];
  };
  return std::make_shared<CoefficientStream>(
      dp->even ? FormTag::kEvenInvBinom : FormTag::kOddBinom, 0,
      "arcsin^" + std::to_string(n) + "/" + std::to_string(n) + "!",
      std::move(exact), std::move(fast));
}

StreamPtr named_stream(const std::string& name) {
  static const std::set<std::string> elems = {"arcsin", "arcsin2_over_2", "arcsinh",
                                              "arctan", "arctanh"};
  if (elems.count(name)) return elem_stream(name);
  if (name == "central_binom_gf") {
    return std::make_shared<CoefficientStream>(
        FormTag::kPlainEven, 0, "central_binom_gf", [](long k) {
          return binomial_rat(2 * static_cast<unsigned long>(k),
                              static_cast<unsigned long>(k));
        });
  }
  if (name == "apery_inv2") {
    return std::make_shared<CoefficientStream>(
        FormTag::kEvenInvBinom, 0, "apery_inv2", [](long k) {
          if (k == 0) return Rational(0);
          return Rational(rat_pow(make_rational(1, 4), k) * make_rational(1, k * k));
        });
  }
  if (name == "apery_inv3_alt") {
    return std::make_shared<CoefficientStream>(
        FormTag::kEvenInvBinom, 0, "apery_inv3_alt", [](long k) {
          if (k == 0) return Rational(0);
          return Rational(rat_pow(make_rational(1, 4), k) *
                          make_rational(k % 2 ? 1 : -1, k * k * k));
        });
  }
  if (name == "cb_over_odd_pow3") {
    return std::make_shared<CoefficientStream>(
        FormTag::kOddBinom, 0, "cb_over_odd_pow3",
        [](long k) { return rat_pow(make_rational(1, 2 * k + 1), 3); });
  }
  if (name == "cb_over_odd_pow4") {
    return std::make_shared<CoefficientStream>(
        FormTag::kOddBinom, 0, "cb_over_odd_pow4",
        [](long k) { return rat_pow(make_rational(1, 2 * k + 1), 4); });
  }
  throw DomainError("unknown stream '" + name + "'");
}

StreamPtr w_transform(const StreamPtr& s) {
  switch (s->form_tag()) {
    case FormTag::kOddBinom: {
      auto exact = [s](long k) { return Rational(s->coeff(k) * make_rational(1, 2 * k + 1)); };
      auto fast = [s](long k, mpfr_prec_t prec) {
        return s->coeff_real(k, prec) / (2 * k + 1);
      };
      return std::make_shared<CoefficientStream>(FormTag::kPlainOdd, s->pi_power(),
                                                 "W[" + s->label() + "]",
                                                 std::move(exact), std::move(fast));
    }
    case FormTag::kEvenInvBinom: {
      auto exact = [s](long k) { return s->coeff(k); };
      auto fast = [s](long k, mpfr_prec_t prec) { return s->coeff_real(k, prec); };
      return std::make_shared<CoefficientStream>(FormTag::kPlainEven, s->pi_power() + 1,
                                                 "W[" + s->label() + "]",
                                                 std::move(exact), std::move(fast));
    }
    default:
      throw DomainError("W is defined on the binomial-weight forms only");
  }
}

StreamPtr over_x_integrate(const StreamPtr& s) {
  const FormTag tag = s->form_tag();
  const bool even =
      (tag == FormTag::kEvenInvBinom || tag == FormTag::kPlainEven);
  if (even && !(s->coeff(0) == 0))
    throw DomainError("termwise integral of f/x needs a vanishing constant term");
  auto exact = [s, even](long k) {
    long mpow = even ? 2 * k : 2 * k + 1;
    if (mpow == 0) return Rational(0);
    return Rational(s->coeff(k) * make_rational(1, mpow));
  };
  auto fast = [s, even](long k, mpfr_prec_t prec) {
    long mpow = even ? 2 * k : 2 * k + 1;
    if (mpow == 0) {
      Real z(prec);
      mpfr_set_zero(z.raw(), 1);
      return z;
    }
    return s->coeff_real(k, prec) / mpow;
  };
  return std::make_shared<CoefficientStream>(tag, s->pi_power(),
                                             "Ix[" + s->label() + "]",
                                             std::move(exact), std::move(fast));
}

namespace {

// fitted decay exponent of |a(k)| between k and 2k (64-bit probe precision)
double decay_exponent(const StreamPtr& s, long k) {
  Real a1 = s->coeff_real(k, 64);
  Real a2 = s->coeff_real(2 * k, 64);
  if (a2.is_zero()) return 1e9;  // vanishing tail
  if (a1.is_zero()) return 0.0;
  return (a1.log10_abs() - a2.log10_abs()) / 0.3010299956639812;
}

}  // namespace

SeriesValue eval_stream(const StreamPtr& s, const Real& x, const PrecisionContext& ctx,
                        TailPolicy policy, std::optional<long> max_terms) {
  ctx.validate();
  const mpfr_prec_t prec = ctx.prec_bits();
  const Real one = Real::of_long(1, prec);
  if (x.sign() < 0 || x > one) throw DomainError("eval_stream needs x in [0, 1]");
  const FormTag tag = s->form_tag();
  const bool odd_form = (tag == FormTag::kOddBinom || tag == FormTag::kPlainOdd);
  const bool at_one = (x == one);

  if (at_one) {
    // the endpoint is only summable when the coefficients decay fast
    // enough to beat the form's own growth; probe before committing
    double shat = decay_exponent(s, 48);
    double need;
    switch (tag) {
      case FormTag::kOddBinom:
        need = 0.9;  // terms ~ k^(-1/2-s)
        break;
      case FormTag::kEvenInvBinom:
        need = 1.9;  // inverse binomial weight grows like sqrt(k)
        break;
      default:
        need = 1.0;
    }
    if (shat < need)
      throw EvaluationError("stream '" + s->label() +
                            "' is not summable at x = 1 (decay exponent " +
                            std::to_string(shat) + ")");
  }

  long cap = max_terms.value_or(static_cast<long>(ctx.series_cap));
  if (cap < 16) cap = 16;
  const Real tol = Real::pow10(-ctx.working_digits(), prec);

  Real sum(prec);
  mpfr_set_zero(sum.raw(), 1);
  Real cb = one;                        // binom(2k,k)/4^k, updated in place
  Real pw(prec);                        // x^(2k) or x^(2k+1)
  if (odd_form)
    mpfr_set(pw.raw(), x.raw(), MPFR_RNDN);
  else
    mpfr_set_ui(pw.raw(), 1, MPFR_RNDN);
  const Real x2 = x * x;

  std::vector<double> mag;  // log10 |term_k|
  mag.reserve(static_cast<size_t>(cap < 4096 ? cap : 4096));
  Real last_t(prec);  // most recent nonzero term
  mpfr_set_zero(last_t.raw(), 1);
  double last_mag = -1e9, prev_mag = -1e9;

  long used = 0;
  int tiny_run = 0;
  for (long k = 0; k < cap; ++k) {
    Real a = s->coeff_real(k, prec);
    Real t(prec);
    switch (tag) {
      case FormTag::kOddBinom:
        t = cb * a * pw;
        break;
      case FormTag::kEvenInvBinom:
        t = a / cb * pw;
        break;
      default:
        t = a * pw;
        break;
    }
    sum += t;
    used = k + 1;
    double m10 = t.log10_abs();
    mag.push_back(m10);
    if (!t.is_zero()) {
      prev_mag = last_mag;
      last_mag = m10;
      last_t = t;
    }
    if (k >= 8 && abs(t) <= tol * max(one, abs(sum))) {
      if (++tiny_run >= 2) break;
    } else {
      tiny_run = 0;
    }
    if (k >= 256 && (k & (k - 1)) == 0 && mag[k] > mag[k / 2] + 10.0)
      throw EvaluationError("series terms are growing; x is outside the stream's disk");
    cb = cb * (2 * k + 1) / (2 * k + 2);
    pw *= x2;
  }

  Real tail(prec);
  mpfr_set_zero(tail.raw(), 1);
  const bool stopped_early = (used < cap);
  if (last_mag > -1e8) {  // at least one nonzero term
    bool geometric_done = false;
    if (stopped_early && prev_mag > -1e8) {
      double r = std::pow(10.0, last_mag - prev_mag);
      if (r < 0.98) {
        tail = abs(last_t) * Real::of_double(r / (1.0 - r) * 4.0, prec);
        geometric_done = true;
      }
    }
    if (!geometric_done) {
      // polynomial-decay fit between terms K/2 and K
      long K = used - 1;
      double mid = mag[K / 2];
      double p_hat = (mid - mag[K]) / 0.3010299956639812;
      if (!(p_hat > 1.05))
        throw EvaluationError("series decays too slowly to bound its tail (exponent " +
                              std::to_string(p_hat) + ")");
      tail = abs(last_t) *
             Real::of_double(static_cast<double>(K) / (p_hat - 1.0) * 4.0, prec);
    }
  }
  if (!stopped_early && policy == TailPolicy::kRequireTolerance) {
    Real need = Real::pow10(-(ctx.digits + 2), prec) * max(one, abs(sum));
    if (tail > need)
      throw EvaluationError("series cap " + std::to_string(cap) +
                            " reached before the requested tolerance");
  }
  // accumulation rounding: up to `used` additions at `prec` bits
  tail += mul_2si(max(abs(sum), one), -static_cast<long>(prec) + 20);

  if (s->pi_power() != 0) {
    Real f = pow_si(mul_2si(Real::pi(prec), -1), s->pi_power());
    sum *= f;
    tail *= abs(f);
  }
  return {sum, tail, used};
}

}  // namespace mzv::series
