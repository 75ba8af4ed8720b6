#include "mzv/multisum.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include "mzv/errors.hpp"
#include "mzv/rational.hpp"

namespace mzv::multisum {

MultiIndex::MultiIndex(std::vector<long> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("multi-index must be nonempty");
  for (long p : parts_)
    if (p < 1) throw DomainError("multi-index entries must be positive");
}

MultiIndex MultiIndex::parse(const std::string& text) {
  static const std::regex plain(R"(^\s*(\d+)\s*$)");
  static const std::regex repeated(R"(^\s*\{\s*(\d+)\s*\}\s*\^\s*(\d+)\s*$)");
  std::vector<long> parts;
  std::stringstream ss(text);
  std::string tok;
  bool any = false;
  while (std::getline(ss, tok, ',')) {
    any = true;
    std::smatch m;
    if (std::regex_match(tok, m, plain)) {
      parts.push_back(std::stol(m[1]));
    } else if (std::regex_match(tok, m, repeated)) {
      long val = std::stol(m[1]);
      long count = std::stol(m[2]);
      if (count < 0) throw DomainError("negative repetition count");
      for (long j = 0; j < count; ++j) parts.push_back(val);
    } else {
      throw DomainError("cannot parse index component '" + tok + "'");
    }
  }
  if (!any) throw DomainError("empty index text");
  return MultiIndex(std::move(parts));
}

MultiIndex MultiIndex::repeat(long m, long n) {
  if (n < 1) throw DomainError("repetition count must be >= 1");
  return MultiIndex(std::vector<long>(static_cast<size_t>(n), m));
}

long MultiIndex::weight() const {
  long w = 0;
  for (long p : parts_) w += p;
  return w;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (size_t j = 0; j < parts_.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(parts_[j]);
  }
  return out;
}

MultiIndex dual_index(const MultiIndex& i) {
  if (!i.admissible()) throw DomainError("dual is defined for admissible indices only");
  // block decomposition: each block starts with an entry >= 2 (giving a_j =
  // entry - 1) and absorbs the run of 1s after it (b_j - 1 of them)
  std::vector<std::pair<long, long>> blocks;  // (a_j, b_j)
  for (long p : i.parts()) {
    if (p >= 2) {
      blocks.emplace_back(p - 1, 1);
    } else {
      blocks.back().second += 1;
    }
  }
  std::vector<long> out;
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    out.push_back(it->second + 1);
    for (long j = 0; j < it->first - 1; ++j) out.push_back(1);
  }
  return MultiIndex(std::move(out));
}

SumKind parse_kind(const std::string& name) {
  if (name == "zeta") return SumKind::kZeta;
  if (name == "t") return SumKind::kT;
  if (name == "mu") return SumKind::kMu;
  if (name == "mubar") return SumKind::kMuBar;
  throw DomainError("unknown sum kind '" + name + "'");
}

std::string kind_name(SumKind k) {
  switch (k) {
    case SumKind::kZeta: return "zeta";
    case SumKind::kT: return "t";
    case SumKind::kMu: return "mu";
    case SumKind::kMuBar: return "mubar";
  }
  return "?";
}

namespace {

// Required parity (0 = even, 1 = odd) of the variable bound by parts[p],
// p = 0 being the outermost/largest; -1 when unrestricted.  Positions count
// j = 1 at the innermost variable, so parts[p] sits at j = depth - p.
int required_parity(SumKind kind, int depth, int p) {
  switch (kind) {
    case SumKind::kZeta: return -1;
    case SumKind::kT: return 1;
    case SumKind::kMu: return (depth - p) & 1;
    case SumKind::kMuBar: return (depth - p + 1) & 1;
  }
  return -1;
}

// integral_N^infinity x^(-e) (1 + log x)^q dx  (e >= 2), by the recursion
// obtained from integration by parts
Real log_power_integral_tail(long N, long e, int q, mpfr_prec_t prec) {
  Real n_real = Real::of_long(N, prec);
  Real one_log = Real::of_long(1, prec) + log(n_real);
  Real base = pow_si(n_real, 1 - e);  // N^(1-e)
  Real acc(prec);
  mpfr_set_zero(acc.raw(), 1);
  // sum_{m=0..q} N^{1-e}(1+ln N)^m / (e-1) * q!/m! / (e-1)^{q-m}
  // from repeatedly applying the by-parts step
  Real coeff = Real::of_long(1, prec) / (e - 1);
  for (int m = q; m >= 0; --m) {
    acc += coeff * base * pow_si(one_log, m);
    coeff = coeff * (m) / (e - 1);
  }
  return acc;
}

}  // namespace

MultiSumValue multisum_eval(SumKind kind, const MultiIndex& idx, const PrecisionContext& ctx,
                            std::optional<long> n_override) {
  const auto& parts = idx.parts();
  const int d = idx.depth();
  if (parts[0] < 2) throw DomainError("divergent index: outermost exponent must be >= 2");

  const mpfr_prec_t prec = ctx.prec_bits();
  long N = n_override.value_or(std::min<long>(ctx.series_cap, 100000));
  if (N < d + 2) N = d + 2;

  // cum[p] accumulates sum over chains whose top variable is <= current m,
  // for the suffix of the index starting at position p; cum[d] == 1 stands
  // for the empty chain.
  std::vector<Real> cum(static_cast<size_t>(d) + 1, Real(prec));
  for (auto& c : cum) mpfr_set_zero(c.raw(), 1);
  mpfr_set_ui(cum[d].raw(), 1, MPFR_RNDN);

  std::vector<int> parity(static_cast<size_t>(d));
  for (int p = 0; p < d; ++p) parity[p] = required_parity(kind, d, p);

  std::vector<Real> g(static_cast<size_t>(d), Real(prec));
  Real minv(prec);
  for (long m = 1; m <= N; ++m) {
    int mbit = static_cast<int>(m & 1);
    // all g[p] must be computed against the pre-update cums (strict >)
    for (int p = 0; p < d; ++p) {
      if (parity[p] >= 0 && parity[p] != mbit) {
        mpfr_set_zero(g[p].raw(), 1);
        continue;
      }
      mpfr_ui_pow_ui(minv.raw(), static_cast<unsigned long>(m),
                     static_cast<unsigned long>(parts[p]), MPFR_RNDN);
      mpfr_ui_div(minv.raw(), 1, minv.raw(), MPFR_RNDN);
      g[p] = minv * cum[p + 1];
    }
    for (int p = 0; p < d; ++p) cum[p] += g[p];
  }

  Real value = cum[0];

  // Outer tail: sum_{n > N} n^{-e0} S(n) where S is the inner-chain sum.
  // S(n) grows like (log n)^q with q = number of inner exponents equal to 1;
  // calibrate the constant from the computed inner prefix sum at N.
  int q = 0;
  for (int p = 1; p < d; ++p)
    if (parts[p] == 1) ++q;
  Real inner_sup = (d == 1) ? Real::of_long(1, prec) : cum[1];
  Real log_n = log(Real::of_long(N, prec));
  Real denom = pow_si(Real::of_long(1, prec) + log_n, q);
  Real c_const = inner_sup / denom;
  Real tail = log_power_integral_tail(N, parts[0], q, prec) * c_const * 2;

  // floating-accumulation slack (the DP performs O(depth*N) roundings)
  Real slack = mul_2si(max(abs(value), Real::of_long(1, prec)), -static_cast<long>(prec) + 14);
  tail += slack;

  MultiSumValue out;
  out.value = value;
  out.tail_bound = tail;
  out.n_truncation = N;

  Real scale = max(abs(value), Real::of_long(1, prec));
  Real rel = tail / scale;
  double rel_d = rel.to_double();
  if (!(rel_d > 0)) {
    out.certified_digits = ctx.digits;
  } else {
    out.certified_digits = static_cast<int>(std::floor(-std::log10(rel_d)));
    if (out.certified_digits > ctx.digits) out.certified_digits = ctx.digits;
  }
  if (out.certified_digits < 1)
    throw EvaluationError("truncation at N=" + std::to_string(N) +
                          " certifies no digits for " + kind_name(kind) + "(" +
                          idx.to_string() + ")");
  return out;
}

ClosedFamily parse_family(const std::string& name) {
  if (name == "zeta_2rep") return ClosedFamily::kZeta2Rep;
  if (name == "t_2rep") return ClosedFamily::kT2Rep;
  if (name == "zeta_4rep") return ClosedFamily::kZeta4Rep;
  if (name == "t_4rep") return ClosedFamily::kT4Rep;
  if (name == "zeta_3_2rep") return ClosedFamily::kZeta32Rep;
  if (name == "t_3_2rep") return ClosedFamily::kT32Rep;
  throw DomainError("unknown closed-form family '" + name + "'");
}

std::string family_name(ClosedFamily f) {
  switch (f) {
    case ClosedFamily::kZeta2Rep: return "zeta_2rep";
    case ClosedFamily::kT2Rep: return "t_2rep";
    case ClosedFamily::kZeta4Rep: return "zeta_4rep";
    case ClosedFamily::kT4Rep: return "t_4rep";
    case ClosedFamily::kZeta32Rep: return "zeta_3_2rep";
    case ClosedFamily::kT32Rep: return "t_3_2rep";
  }
  return "?";
}

symbolic::Combo I_closed_symbolic(long n) {
  using symbolic::Combo;
  if (n < 1) throw DomainError("I(n) requires n >= 1");
  const long m = n / 2;  // floor; for odd n = 2m+1, for even n = 2m
  const bool even = (n % 2 == 0);
  const Rational front = factorial_rat(static_cast<unsigned long>(n)) /
                         rat_pow(make_rational(2), n);
  Combo total;
  const long jmax = even ? m - 1 : m;
  for (long j = 0; j <= jmax; ++j) {
    Rational c = front * inv_factorial(static_cast<unsigned long>(n - 2 * j));
    if (j % 2 == 1) c = -c;
    if (j == 0) {
      // eta(1) = log 2
      total = total + Combo::log2().scaled(c).mul_pi(static_cast<int>(n));
    } else {
      // eta(2j+1) = (1 - 2^(-2j)) zeta(2j+1)
      Rational eta_f = 1 - rat_pow(make_rational(1, 2), 2 * j);
      total = total +
              Combo::zeta(2 * j + 1).scaled(c * eta_f).mul_pi(static_cast<int>(n - 2 * j));
    }
  }
  if (even) {
    Rational c = front * 2 * (1 - rat_pow(make_rational(1, 2), n + 1));
    if (m % 2 == 1) c = -c;
    total = total + Combo::zeta(n + 1).scaled(c);
  }
  return total;
}

core::BoundedValue I_closed(long n, const PrecisionContext& ctx) {
  return symbolic::eval(I_closed_symbolic(n), ctx);
}

symbolic::Combo closed_form_symbolic(ClosedFamily f, long n) {
  using symbolic::Combo;
  switch (f) {
    case ClosedFamily::kZeta2Rep: {
      if (n < 1) throw DomainError("zeta_2rep requires n >= 1");
      // pi^(2n)/(2n+1)!
      return Combo::pi_power(static_cast<int>(2 * n))
          .scaled(inv_factorial(static_cast<unsigned long>(2 * n + 1)));
    }
    case ClosedFamily::kT2Rep: {
      if (n < 1) throw DomainError("t_2rep requires n >= 1");
      // (pi/2)^(2n)/(2n)!
      Rational c = inv_factorial(static_cast<unsigned long>(2 * n)) /
                   rat_pow(make_rational(2), 2 * n);
      return Combo::pi_power(static_cast<int>(2 * n)).scaled(c);
    }
    case ClosedFamily::kZeta4Rep: {
      if (n < 1) throw DomainError("zeta_4rep requires n >= 1");
      Rational c = rat_pow(make_rational(2), 2 * n + 1) *
                   inv_factorial(static_cast<unsigned long>(4 * n + 2));
      return Combo::pi_power(static_cast<int>(4 * n)).scaled(c);
    }
    case ClosedFamily::kT4Rep: {
      if (n < 1) throw DomainError("t_4rep requires n >= 1");
      Rational c = inv_factorial(static_cast<unsigned long>(4 * n)) /
                   rat_pow(make_rational(2), 2 * n);
      return Combo::pi_power(static_cast<int>(4 * n)).scaled(c);
    }
    case ClosedFamily::kT32Rep: {
      if (n < 0) throw DomainError("t_3_2rep requires n >= 0");
      // (1/(2n+1)!) ( (pi/2) I(2n+1) - I(2n+2) )
      Rational c = inv_factorial(static_cast<unsigned long>(2 * n + 1));
      symbolic::Combo half_pi_i = I_closed_symbolic(2 * n + 1).scaled(make_rational(1, 2)).mul_pi(1);
      return (half_pi_i + I_closed_symbolic(2 * n + 2).scaled(make_rational(-1))).scaled(c);
    }
    case ClosedFamily::kZeta32Rep: {
      if (n < 0) throw DomainError("zeta_3_2rep requires n >= 0");
      // 2^(2n+3) (2/pi) (1/(2n+2)!) ( (pi/2) I(2n+2) - I(2n+3) )
      Rational c = rat_pow(make_rational(2), 2 * n + 3) *
                   inv_factorial(static_cast<unsigned long>(2 * n + 2));
      symbolic::Combo inner = I_closed_symbolic(2 * n + 2) +
                              I_closed_symbolic(2 * n + 3).scaled(make_rational(-2)).mul_pi(-1);
      return inner.scaled(c);
    }
  }
  throw DomainError("unhandled closed-form family");
}

core::BoundedValue closed_form(ClosedFamily f, long n, const PrecisionContext& ctx) {
  return symbolic::eval(closed_form_symbolic(f, n), ctx);
}

}  // namespace mzv::multisum
