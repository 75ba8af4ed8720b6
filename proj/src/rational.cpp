#include "mzv/rational.hpp"

#include <mutex>
#include <vector>

#include "mzv/errors.hpp"

namespace mzv {

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rat_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0 && e < 0) throw DomainError("rat_pow: 0 to a negative power");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), a);
  if (e < 0) {
    mpz_swap(r.get_num_mpz_t(), r.get_den_mpz_t());
    r.canonicalize();  // re-normalize the sign onto the numerator
  }
  return r;
}

Rational binomial_rat(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

Rational factorial_rat(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational inv_factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(1) / Rational(f);
}

Rational bernoulli(unsigned long n) {
  static std::mutex mu;
  static std::vector<Rational> table;  // table[m] = B_m
  std::lock_guard<std::mutex> lock(mu);
  if (table.empty()) {
    table.push_back(Rational(1));                // B_0
    table.push_back(make_rational(-1, 2));       // B_1
  }
  while (table.size() <= n) {
    unsigned long m = table.size();
    if (m % 2 == 1) {  // B_odd = 0 for odd >= 3
      table.push_back(Rational(0));
      continue;
    }
    Rational acc(0);
    for (unsigned long j = 0; j < m; ++j) {
      if (table[j] == 0) continue;
      acc += binomial_rat(m + 1, j) * table[j];
    }
    table.push_back(-acc / Rational(static_cast<long>(m) + 1));
  }
  return table[n];
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace mzv
