#include "mzv/symbolic.hpp"

#include <sstream>

#include "mzv/errors.hpp"

namespace mzv::symbolic {

Combo Combo::rational(const Rational& q) {
  Combo c;
  c.add_term(Atom{}, q);
  return c;
}
Combo Combo::log2(const Rational& coeff, long power) {
  if (power < 1) throw DomainError("log2 atom needs power >= 1");
  Combo c;
  c.add_term(Atom{Atom::Base::kLog2, power, 0}, coeff);
  return c;
}
Combo Combo::zeta(long arg, const Rational& coeff) {
  Combo c;
  c.add_term(Atom{Atom::Base::kZeta, arg, 0}, coeff);
  return c;
}
Combo Combo::beta(long arg, const Rational& coeff) {
  Combo c;
  c.add_term(Atom{Atom::Base::kBeta, arg, 0}, coeff);
  return c;
}
Combo Combo::pi_power(int p, const Rational& coeff) {
  Combo c;
  c.add_term(Atom{Atom::Base::kOne, 0, p}, coeff);
  return c;
}

Combo& Combo::add_term(Atom a, const Rational& coeff) {
  if (coeff == 0) return *this;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

Combo Combo::operator+(const Combo& o) const {
  Combo r = *this;
  for (const auto& [a, q] : o.terms_) r.add_term(a, q);
  return r;
}

Combo Combo::operator-(const Combo& o) const {
  Combo r = *this;
  for (const auto& [a, q] : o.terms_) r.add_term(a, -q);
  return r;
}

Combo Combo::scaled(const Rational& q) const {
  Combo r;
  if (q == 0) return r;
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, c * q);
  return r;
}

Combo Combo::mul_pi(int p) const {
  Combo r;
  for (const auto& [a, c] : terms_) {
    Atom b = a;
    b.pi_pow += p;
    r.terms_.emplace(b, c);
  }
  return r;
}

Rational Combo::coeff(const Atom& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::string Combo::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, q] : terms_) {
    Rational aq = q < 0 ? Rational(-q) : q;
    if (first) {
      if (q < 0) os << "-";
      first = false;
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    bool have_coeff = !(aq == 1) || (a.base == Atom::Base::kOne && a.pi_pow == 0);
    if (have_coeff) os << aq.get_str();
    bool printed = have_coeff;
    if (a.pi_pow != 0) {
      if (printed) os << "*";
      os << "pi";
      if (a.pi_pow != 1) os << "^" << a.pi_pow;
      printed = true;
    }
    switch (a.base) {
      case Atom::Base::kOne:
        break;
      case Atom::Base::kLog2:
        if (printed) os << "*";
        os << "log2";
        if (a.arg > 1) os << "^" << a.arg;
        break;
      case Atom::Base::kZeta:
        if (printed) os << "*";
        os << "zeta(" << a.arg << ")";
        break;
      case Atom::Base::kBeta:
        if (printed) os << "*";
        os << "beta(" << a.arg << ")";
        break;
    }
  }
  return os.str();
}

core::BoundedValue eval(const Combo& c, const PrecisionContext& ctx) {
  mpfr_prec_t prec = ctx.prec_bits();
  Real total(prec);
  mpfr_set_zero(total.raw(), 1);
  Real err(prec);
  mpfr_set_zero(err.raw(), 1);
  Real pi = Real::pi(prec);

  for (const auto& [a, q] : c.terms()) {
    if (a.pi_pow < 0)
      throw DomainError("symbolic eval: negative pi power left after composition");
    core::BoundedValue base;
    switch (a.base) {
      case Atom::Base::kOne:
        base = {Real::of_long(1, prec), Real::of_long(0, prec)};
        break;
      case Atom::Base::kLog2: {
        base = core::constant(core::NamedConstant::kLog2, ctx);
        // log^arg(2); |log 2| < 1, so the error scales by at most arg
        long p = a.arg < 1 ? 1 : a.arg;
        base.value = pow_si(base.value, p);
        base.error = base.error * p;
        break;
      }
      case Atom::Base::kZeta:
        base = core::zeta_int(a.arg, ctx);
        break;
      case Atom::Base::kBeta:
        base = core::beta_int(a.arg, ctx);
        break;
    }
    Real factor = Real::of_rational(q, prec);
    if (a.pi_pow > 0) factor *= pow_si(pi, a.pi_pow);
    total += factor * base.value;
    err += abs(factor) * base.error;
  }
  // rounding slack for the accumulation itself
  err += mul_2si(abs(total) + Real::of_long(1, prec), -static_cast<long>(prec) + 8);
  return {total, err};
}

}  // namespace mzv::symbolic
