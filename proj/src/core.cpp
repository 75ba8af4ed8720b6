#include "mzv/core.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "mzv/errors.hpp"

namespace mzv::core {

namespace {

// (family, a, b, prec_bits) -> value.  Family 0 = arith_prog_sum(a=step
// packed with offset via b, power), 1 = beta, 2 = pi, 3 = log2.  Bounded
// error is reconstructed cheaply, so only values are cached.
struct CacheKey {
  int family;
  long a;
  long b;
  mpfr_prec_t prec;
  bool operator<(const CacheKey& o) const {
    return std::tie(family, a, b, prec) < std::tie(o.family, o.a, o.b, o.prec);
  }
};

std::mutex g_cache_mu;
std::map<CacheKey, Real> g_cache;

bool cache_get(const CacheKey& k, Real& out) {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto it = g_cache.find(k);
  if (it == g_cache.end()) return false;
  out = it->second;
  return true;
}

void cache_put(const CacheKey& k, const Real& v) {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.emplace(k, v);
}

// rounding-noise allowance relative to |v|
Real ulp_slack(const Real& v, mpfr_prec_t prec) {
  return mul_2si(abs(v), -static_cast<long>(prec) + 8) + mul_2si(Real::of_long(1, 32), -static_cast<long>(prec) + 8);
}

}  // namespace

NamedConstant parse_constant_name(const std::string& name) {
  if (name == "pi") return NamedConstant::kPi;
  if (name == "log2") return NamedConstant::kLog2;
  if (name == "catalan") return NamedConstant::kCatalan;
  throw DomainError("unknown constant '" + name + "' (expected pi, log2 or catalan)");
}

std::string constant_name(NamedConstant c) {
  switch (c) {
    case NamedConstant::kPi: return "pi";
    case NamedConstant::kLog2: return "log2";
    case NamedConstant::kCatalan: return "catalan";
  }
  return "?";
}

BoundedValue constant(NamedConstant which, const PrecisionContext& ctx) {
  mpfr_prec_t prec = ctx.prec_bits();
  switch (which) {
    case NamedConstant::kPi: {
      Real v = Real::pi(prec);
      return {v, ulp_slack(v, prec)};
    }
    case NamedConstant::kLog2: {
      Real v = Real::log2_const(prec);
      return {v, ulp_slack(v, prec)};
    }
    case NamedConstant::kCatalan:
      return beta_int(2, ctx);
  }
  throw DomainError("constant: bad enum");
}

BoundedValue arith_prog_sum(long step, long offset, long power, const PrecisionContext& ctx) {
  if (step < 1 || offset < 1) throw DomainError("arith_prog_sum: step and offset must be >= 1");
  if (power < 2) throw DomainError("arith_prog_sum: power must be >= 2 (divergent otherwise)");
  mpfr_prec_t prec = ctx.prec_bits();

  CacheKey key{0, step * 1000000 + offset, power, prec};
  Real cached;
  if (cache_get(key, cached)) return {cached, ulp_slack(cached, prec) * 4};

  long n_terms = std::max<long>(50, ctx.working_digits());
  Real tol = Real::pow10(-ctx.working_digits(), prec);

  // direct part: sum over k = 0 .. n_terms-1 of (step*k+offset)^-power
  Real sum(prec);
  mpfr_set_zero(sum.raw(), 1);
  Real t(prec);
  for (long k = 0; k < n_terms; ++k) {
    unsigned long m = static_cast<unsigned long>(step * k + offset);
    mpfr_ui_pow_ui(t.raw(), m, static_cast<unsigned long>(power), MPFR_RNDN);
    mpfr_si_div(t.raw(), 1, t.raw(), MPFR_RNDN);
    sum += t;
  }

  // Euler-Maclaurin tail for f(x) = (step*x+offset)^-power starting at
  // x = N:
  //   sum_{k>=N} f(k) = integral_N^inf f + f(N)/2
  //                     - sum_{i>=1} B_{2i}/(2i)! f^{(2i-1)}(N)
  // with f^{(m)}(x) = (-step)^m (s)_m (step*x+offset)^{-s-m}, s = power.
  long N = n_terms;
  Real base = Real::of_long(step * N + offset, prec);
  Real inv_base = 1 / base;
  // integral: base^{1-s} / (step (s-1))
  Real tail = pow_si(base, 1 - power) / (step * (power - 1));
  // half-term
  Real fN = pow_si(base, -power);
  tail += fN / 2;

  // correction terms: +B_{2i}/(2i)! * step^{2i-1} * (s)_{2i-1} * base^{-s-2i+1}
  // (sign: -B_{2i}/(2i)! * f^{(2i-1)}, and (-step)^{2i-1} = -step^{2i-1})
  Real poch = Real::of_long(power, prec);  // (s)_1
  Real step_pow = Real::of_long(step, prec);
  Real base_pow = pow_si(base, -power - 1);
  Real inv_base2 = inv_base * inv_base;
  Real first_omitted(prec);
  mpfr_set_zero(first_omitted.raw(), 1);
  bool converged = false;
  for (long i = 1; i <= 600; ++i) {
    Real term = Real::of_rational(bernoulli(2 * static_cast<unsigned long>(i)) *
                                      inv_factorial(2 * static_cast<unsigned long>(i)),
                                  prec) *
                step_pow * poch * base_pow;
    if (abs(term) < tol) {
      first_omitted = abs(term);
      converged = true;
      break;
    }
    tail += term;
    // advance (s)_{2i-1} -> (s)_{2i+1}, step^{2i-1} -> step^{2i+1},
    // base^{-s-2i+1} -> base^{-s-2i-1}
    poch *= Real::of_long((power + 2 * i - 1) * (power + 2 * i), prec);
    step_pow *= Real::of_long(step * step, prec);
    base_pow *= inv_base2;
  }
  if (!converged)
    throw EvaluationError("arith_prog_sum: Euler-Maclaurin tail did not reach tolerance");

  Real value = sum + tail;
  cache_put(key, value);
  // remainder is bounded by the first omitted correction term (alternating
  // envelope); double it and add rounding slack
  return {value, first_omitted * 2 + ulp_slack(value, prec) * 4};
}

BoundedValue zeta_int(long s, const PrecisionContext& ctx) {
  if (s < 2) throw DomainError("zeta_int: s must be >= 2");
  return arith_prog_sum(1, 1, s, ctx);
}

BoundedValue eta_int(long j, const PrecisionContext& ctx) {
  if (j < 1) throw DomainError("eta_int: j must be >= 1");
  if (j == 1) return constant(NamedConstant::kLog2, ctx);
  mpfr_prec_t prec = ctx.prec_bits();
  BoundedValue z = zeta_int(j, ctx);
  // 1 - 2^{1-j}, exact in binary
  Real factor = 1 - mul_2si(Real::of_long(1, prec), 1 - j);
  return {factor * z.value, factor * z.error + ulp_slack(z.value, prec)};
}

BoundedValue beta_int(long s, const PrecisionContext& ctx) {
  if (s < 2) throw DomainError("beta_int: s must be >= 2");
  mpfr_prec_t prec = ctx.prec_bits();

  CacheKey key{1, s, 0, prec};
  Real cached;
  if (cache_get(key, cached)) return {cached, ulp_slack(cached, prec) * 4};

  // n terms give error ~ (3+sqrt 8)^-n = 5.828^-n; ln 10 / ln 5.828 = 1.306
  long n = static_cast<long>(1.31 * ctx.working_digits()) + 8;

  // d = (3+sqrt 8)^n; d = (d + 1/d)/2
  Real d = pow_si(Real::of_long(3, prec) + sqrt(Real::of_long(8, prec)), n);
  d = (d + 1 / d) / 2;
  Real b = Real::of_long(-1, prec);
  Real c = -d;
  Real sum(prec);
  mpfr_set_zero(sum.raw(), 1);
  Real ak(prec);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    // a_k = 1/(2k+1)^s
    mpfr_ui_pow_ui(ak.raw(), static_cast<unsigned long>(2 * k + 1),
                   static_cast<unsigned long>(s), MPFR_RNDN);
    mpfr_si_div(ak.raw(), 1, ak.raw(), MPFR_RNDN);
    sum += c * ak;
    // b *= (k+n)(k-n) / ((k+1/2)(k+1))
    b *= Real::of_long(2 * (k + n), prec) * Real::of_long(k - n, prec);
    b /= Real::of_long(2 * k + 1, prec) * Real::of_long(k + 1, prec);
  }
  Real value = sum / d;
  cache_put(key, value);
  // |error| <= 2 * (3+sqrt 8)^-n * sum |a_k| and sum |a_k| < 1.25 for s>=2
  Real err = 3 / d + ulp_slack(value, prec) * 4;
  return {value, err};
}

void clear_constant_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.clear();
}

}  // namespace mzv::core
