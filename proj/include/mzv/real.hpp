#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "mzv/rational.hpp"

namespace mzv {

// RAII wrapper over mpfr_t.  Every value carries its own precision; binary
// operators round to the wider operand's precision (round-to-nearest
// throughout).  Cheap to move, deliberate to copy.
class Real {
 public:
  Real() { mpfr_init2(v_, 53); }  // NaN; default-constructible for containers
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, 53);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of_long(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_double(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_rational(const Rational& q, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real log2_const(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
  }
  static Real catalan_reference(mpfr_prec_t prec) {  // cross-check only
    Real r(prec);
    mpfr_const_catalan(r.v_, MPFR_RNDN);
    return r;
  }
  // 10^k, k possibly negative
  static Real pow10(long k, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_ui_pow_ui(r.v_, 10u, static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDN);
    if (k < 0) mpfr_si_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // scientific notation with `digits` significant digits
  std::string to_string(int digits) const;

  // log10(|x|) as a double; -inf for 0.  Handy for digit accounting where
  // only the exponent matters.
  double log10_abs() const {
    if (mpfr_zero_p(v_)) return -1e9;
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_abs(t, v_, MPFR_RNDN);
    mpfr_log10(t, t, MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return d;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

#define MZV_REAL_BINOP(op, fn)                                    \
  friend Real operator op(const Real& a, const Real& b) {        \
    Real r(a.prec() > b.prec() ? a.prec() : b.prec());            \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                              \
    return r;                                                     \
  }
  MZV_REAL_BINOP(+, mpfr_add)
  MZV_REAL_BINOP(-, mpfr_sub)
  MZV_REAL_BINOP(*, mpfr_mul)
  MZV_REAL_BINOP(/, mpfr_div)
#undef MZV_REAL_BINOP

  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long b) {
    Real r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) {
    return mpfr_greaterequal_p(a.v_, b.v_) != 0;
  }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

#define MZV_REAL_FN(name, fn)          \
  friend Real name(const Real& a) {    \
    Real r(a.prec());                  \
    fn(r.v_, a.v_, MPFR_RNDN);         \
    return r;                          \
  }
  MZV_REAL_FN(abs, mpfr_abs)
  MZV_REAL_FN(sqrt, mpfr_sqrt)
  MZV_REAL_FN(log, mpfr_log)
  MZV_REAL_FN(exp, mpfr_exp)
  MZV_REAL_FN(sin, mpfr_sin)
  MZV_REAL_FN(cos, mpfr_cos)
  MZV_REAL_FN(tan, mpfr_tan)
  MZV_REAL_FN(cot, mpfr_cot)
  MZV_REAL_FN(asin, mpfr_asin)
  MZV_REAL_FN(acos, mpfr_acos)
  MZV_REAL_FN(atan, mpfr_atan)
  MZV_REAL_FN(asinh, mpfr_asinh)
  MZV_REAL_FN(atanh, mpfr_atanh)
  MZV_REAL_FN(cosh, mpfr_cosh)
  MZV_REAL_FN(sinh, mpfr_sinh)
#undef MZV_REAL_FN

  friend Real pow_si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend Real mul_2si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
  friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

 private:
  mpfr_t v_;
};

}  // namespace mzv
