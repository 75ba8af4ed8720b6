#pragma once

#include <map>
#include <string>
#include <tuple>

#include "mzv/core.hpp"
#include "mzv/rational.hpp"

namespace mzv::symbolic {

// One monomial pi^pi_pow * base, where base is 1, log^arg(2), zeta(arg) or
// beta(arg).  Exact rational coefficients over these atoms are enough to
// state every closed form this library produces symbolically.
struct Atom {
  enum class Base { kOne, kLog2, kZeta, kBeta };
  Base base = Base::kOne;
  long arg = 0;     // zeta/beta argument, log2 power; 0 for kOne
  int pi_pow = 0;   // may be negative transiently while composing

  bool operator<(const Atom& o) const {
    return std::tie(base, arg, pi_pow) < std::tie(o.base, o.arg, o.pi_pow);
  }
  bool operator==(const Atom& o) const {
    return base == o.base && arg == o.arg && pi_pow == o.pi_pow;
  }
};

// A finite rational linear combination of atoms; zero coefficients are
// dropped, so operator== is exact structural equality of the math.
class Combo {
 public:
  Combo() = default;
  static Combo rational(const Rational& q);
  static Combo log2(const Rational& coeff = Rational(1), long power = 1);
  static Combo zeta(long arg, const Rational& coeff = Rational(1));
  static Combo beta(long arg, const Rational& coeff = Rational(1));
  static Combo pi_power(int p, const Rational& coeff = Rational(1));

  Combo& add_term(Atom a, const Rational& coeff);
  Combo operator+(const Combo& o) const;
  Combo operator-(const Combo& o) const;
  Combo scaled(const Rational& q) const;
  Combo mul_pi(int p) const;  // multiply by pi^p

  bool operator==(const Combo& o) const { return terms_ == o.terms_; }
  bool empty() const { return terms_.empty(); }
  const std::map<Atom, Rational>& terms() const { return terms_; }

  // coefficient lookup (0 if absent)
  Rational coeff(const Atom& a) const;

  std::string to_string() const;  // "7/8*zeta(3) - 1/8*pi^2*log2"

 private:
  std::map<Atom, Rational> terms_;
};

core::BoundedValue eval(const Combo& c, const PrecisionContext& ctx);

}  // namespace mzv::symbolic
