#include "mzv/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "mzv/errors.hpp"
#include "mzv/rational.hpp"

namespace mzv::quadrature {

namespace {

struct Node {
  Real delta;   // distance of the abscissa from the interval endpoint,
                // as a fraction of the half-length (0 < delta <= 1)
  Real weight;  // (pi/2) cosh(u) sech^2((pi/2) sinh(u))
};

using NodeTable = std::vector<Node>;

std::mutex g_node_mu;
std::map<std::pair<mpfr_prec_t, int>, std::shared_ptr<const NodeTable>> g_node_cache;

// Build the abscissae of one refinement level.  Level 0 holds u = 0, 1, 2,
// ...; level L >= 1 holds the odd multiples of h = 2^-L.  Nodes are emitted
// until the double-exponential factor E = exp(-pi sinh u) is far below
// every contribution representable at this precision (E^(1/2) covers
// inverse-square-root endpoint growth).
std::shared_ptr<const NodeTable> level_nodes(mpfr_prec_t prec, int level) {
  {
    std::lock_guard<std::mutex> lk(g_node_mu);
    auto it = g_node_cache.find({prec, level});
    if (it != g_node_cache.end()) return it->second;
  }
  auto table = std::make_shared<NodeTable>();
  const Real pi = Real::pi(prec);
  const Real half_pi = mul_2si(pi, -1);
  // cutoff: E < 10^-(2*decimal_digits+10)
  double dec_digits = static_cast<double>(prec) * 0.30103;
  Real log_cut = Real::of_double(-(2.0 * dec_digits + 10.0) * 2.302585092994046, prec);

  const long denom = (level == 0) ? 1 : (1L << level);
  long j = (level == 0) ? 0 : 1;
  const long step = (level == 0) ? 1 : 2;
  for (;; j += step) {
    Real u = Real::of_long(j, prec) / denom;
    Real sh = sinh(u);
    Real minus_pi_sh = -(pi * sh);
    if (minus_pi_sh < log_cut && j > 0) break;
    Real e = exp(minus_pi_sh);
    Real one_plus = Real::of_long(1, prec) + e;
    Node nd;
    nd.delta = mul_2si(e, 1) / one_plus;                       // 2E/(1+E)
    nd.weight = half_pi * cosh(u) * mul_2si(e, 2) / (one_plus * one_plus);
    table->push_back(std::move(nd));
  }
  std::lock_guard<std::mutex> lk(g_node_mu);
  auto [it, inserted] = g_node_cache.emplace(std::make_pair(prec, level), table);
  return it->second;
}

Real sample(const EndpointIntegrand& f, const Real& x, const Real& d) {
  Real v = f(x, d);
  if (!v.is_finite()) throw EvaluationError("non-finite integrand sample");
  return v;
}

}  // namespace

void clear_node_cache() {
  std::lock_guard<std::mutex> lk(g_node_mu);
  g_node_cache.clear();
}

QuadratureResult tanh_sinh_ep(const EndpointIntegrand& f, const Real& a, const Real& b,
                              const PrecisionContext& ctx) {
  const mpfr_prec_t prec = ctx.prec_bits();
  if (!(a < b)) throw DomainError("tanh_sinh requires a < b");
  const Real s = mul_2si(b - a, -1);  // half-length
  const Real tol = Real::pow10(-(ctx.digits + 2), prec);

  Real sum(prec);
  mpfr_set_zero(sum.raw(), 1);
  Real value(prec), prev_value(prec);
  Real d1(prec), d2(prec);
  mpfr_set_inf(d1.raw(), 1);
  mpfr_set_inf(d2.raw(), 1);
  int level = 0;
  bool converged = false;

  for (level = 0; level <= ctx.quad_max_level; ++level) {
    auto nodes = level_nodes(prec, level);
    Real part(prec);
    mpfr_set_zero(part.raw(), 1);
    bool first = (level == 0);
    for (size_t i = 0; i < nodes->size(); ++i) {
      const Node& nd = (*nodes)[i];
      Real dist = s * nd.delta;
      if (first && i == 0) {
        // center node u = 0 (delta = 1): x = midpoint, counted once
        Real x = a + dist;
        part += nd.weight * sample(f, x, dist);
        continue;
      }
      Real xl = a + dist;
      Real xr = b - dist;
      part += nd.weight * (sample(f, xl, dist) + sample(f, xr, dist));
    }
    if (level == 0) {
      sum = part;  // h = 1
    } else {
      // refine: halve the previous step sum and add the new odd nodes at
      // h = 2^-level
      sum = mul_2si(sum, -1) + mul_2si(part, -level);
    }
    prev_value = value;
    value = s * sum;
    if (level >= 1) {
      d2 = d1;
      d1 = abs(value - prev_value);
      Real scale = max(abs(value), Real::of_long(1, prec));
      if (level >= 2 && d1 <= tol * scale) {
        converged = true;
        ++level;
        break;
      }
    }
  }
  QuadratureResult out;
  out.value = value;
  out.levels_used = (level > ctx.quad_max_level) ? ctx.quad_max_level : level - 1;

  // inter-level differences decay roughly quadratically in the exponent:
  // project one more halving as d1^2/d2, but never claim less than d1 alone
  // would justify, and keep a floor at the rounding level of the result
  Real est = d1;
  if (d2.is_finite() && d2.sign() > 0) {
    Real proj = (d1 * d1) / d2;
    est = min(d1, proj);
  }
  Real floor_err =
      mul_2si(max(abs(value), Real::of_long(1, prec)), -static_cast<long>(prec) + 10);
  out.error_estimate = max(est, floor_err) * 4;

  if (!converged) {
    Real scale = max(abs(value), Real::of_long(1, prec));
    if (d1 > tol * scale)
      throw EvaluationError("tanh-sinh did not converge within level budget");
  }
  return out;
}

QuadratureResult tanh_sinh(const Integrand& f, const Real& a, const Real& b,
                           const PrecisionContext& ctx) {
  return tanh_sinh_ep([&f](const Real& x, const Real&) { return f(x); }, a, b, ctx);
}

namespace {

// arctanh free of cancellation at the right endpoint: d must equal 1 - x
Real atanh_near_one(const Real& x, const Real& d, mpfr_prec_t prec) {
  if (x < Real::of_rational(make_rational(3, 4), prec)) {
    return atanh(x);
  }
  return mul_2si(log(Real::of_long(1, prec) + x) - log(d), -1);
}

Real int_pow(const Real& x, long n) { return pow_si(x, n); }

struct Built {
  Real a;
  Real b;
  EndpointIntegrand f;
  Rational pref = make_rational(1);
  int pref_pi_pow = 0;  // 0 or -1
};

struct CatalogEntry {
  IntegrandSpec spec;
  std::function<Built(const std::vector<long>&, const PrecisionContext&)> build;
};

void require_params(const IntegrandSpec& spec, const std::vector<long>& params) {
  if (static_cast<int>(params.size()) != spec.n_params)
    throw DomainError("integrand '" + spec.id + "' takes " + std::to_string(spec.n_params) +
                      " parameter(s), got " + std::to_string(params.size()));
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> table = [] {
    std::vector<CatalogEntry> v;
    auto add = [&v](IntegrandSpec spec,
                    std::function<Built(const std::vector<long>&, const PrecisionContext&)> b) {
      v.push_back({std::move(spec), std::move(b)});
    };

    add({"basel_arcsin", 0, "arcsin(x)/sqrt(1-x^2) over (0,1)", "X_EQ_SIN_Y",
         "inverse-square-root factor removed by substitution"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          b.f = [](const Real& y, const Real&) { return y; };
          return b;
        });

    add({"basel_arcsin2_even", 0, "(2/pi) arcsin^2(x)/2! / sqrt(1-x^2) over (0,1)",
         "X_EQ_SIN_Y", "inverse-square-root factor removed by substitution"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          b.f = [](const Real& y, const Real&) { return mul_2si(y * y, -1); };
          b.pref = make_rational(2);
          b.pref_pi_pow = -1;
          return b;
        });

    add({"thm1_zeta3_odd", 0, "arcsin(x) arccos(x)/x over (0,1)", "NONE",
         "bounded: arccos vanishes at 1, arcsin ~ x at 0"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          b.f = [](const Real& x, const Real&) { return asin(x) * acos(x) / x; };
          return b;
        });

    add({"thm1_zeta3_even", 0, "(2/pi) (arcsin^2(x)/2!) arccos(x)/x over (0,1)", "NONE",
         "squared-arcsine integrand; a published display prints arcsin x/2! instead"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          b.f = [](const Real& x, const Real&) {
            Real s = asin(x);
            return mul_2si(s * s, -1) * acos(x) / x;
          };
          b.pref = make_rational(2);
          b.pref_pi_pow = -1;
          return b;
        });

    add({"thm2_catalan", 0, "arcsinh(x)/sqrt(1-x^2) over (0,1)", "X_EQ_SIN_Y",
         "inverse-square-root factor removed by substitution"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          b.f = [](const Real& y, const Real&) { return asinh(sin(y)); };
          return b;
        });

    add({"thm2_pi3_32", 0, "arcsinh(x) arccos(x)/x over (0,1)", "NONE",
         "bounded endpoints"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          b.f = [](const Real& x, const Real&) { return asinh(x) * acos(x) / x; };
          return b;
        });

    add({"thm3_arctan_arccot", 0, "arctan(x) arccot(x)/x over (0,1)", "NONE",
         "bounded endpoints"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          Real half_pi = mul_2si(Real::pi(prec), -1);
          b.f = [half_pi](const Real& x, const Real&) {
            Real at = atan(x);
            return at * (half_pi - at) / x;
          };
          return b;
        });

    add({"thm3_A1", 0, "arctan(x)/x over (0,1)", "NONE", "bounded"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          b.f = [](const Real& x, const Real&) { return atan(x) / x; };
          return b;
        });

    add({"thm3_A2", 0, "arctan^2(x)/x over (0,1)", "NONE", "bounded"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          b.f = [](const Real& x, const Real&) {
            Real at = atan(x);
            return at * at / x;
          };
          return b;
        });

    add({"thm5_t", 1, "arcsin^(2n+1)(x)/(2n+1)! arccos(x)/x over (0,1)", "X_EQ_SIN_Y",
         "substituted integrand y^(2n+1)(pi/2-y)cot(y) is bounded"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 0) throw DomainError("thm5_t requires n >= 0");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          long n = p[0];
          Real half_pi = b.b;
          b.f = [n, half_pi](const Real& y, const Real&) {
            return int_pow(y, 2 * n + 1) * (half_pi - y) * cot(y);
          };
          b.pref = inv_factorial(static_cast<unsigned long>(2 * n + 1));
          return b;
        });

    add({"thm5_zeta", 1, "(2/pi) arcsin^(2n+2)(x)/(2n+2)! arccos(x)/x over (0,1)",
         "X_EQ_SIN_Y", "substituted integrand y^(2n+2)(pi/2-y)cot(y) is bounded"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 0) throw DomainError("thm5_zeta requires n >= 0");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          long n = p[0];
          Real half_pi = b.b;
          b.f = [n, half_pi](const Real& y, const Real&) {
            return int_pow(y, 2 * n + 2) * (half_pi - y) * cot(y);
          };
          b.pref = make_rational(2) * inv_factorial(static_cast<unsigned long>(2 * n + 2));
          b.pref_pi_pow = -1;
          return b;
        });

    add({"I_n", 1, "arcsin^n(x)/x over (0,1)", "X_EQ_SIN_Y",
         "substituted integrand y^n cot(y) is bounded for n >= 1"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 1) throw DomainError("I_n requires n >= 1");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          long n = p[0];
          b.f = [n](const Real& y, const Real&) { return int_pow(y, n) * cot(y); };
          return b;
        });

    add({"logpow_xn", 2, "x^n log^r(x)/(r! x) over (0,1)", "NONE",
         "log-power singularity at 0 handled natively"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 1 || p[1] < 0) throw DomainError("logpow_xn requires n >= 1, r >= 0");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          long n = p[0], r = p[1];
          b.f = [n, r](const Real& x, const Real&) {
            Real v = int_pow(x, n - 1);
            if (r > 0) v = v * int_pow(log(x), r);
            return v;
          };
          b.pref = inv_factorial(static_cast<unsigned long>(r));
          return b;
        });

    add({"arctanh_logr", 1, "arctanh(x) log^r(x)/(r! x) over (0,1)", "NONE",
         "log singularities at both endpoints"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 1) throw DomainError("arctanh_logr requires r >= 1");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          long r = p[0];
          b.f = [r, prec](const Real& x, const Real& d) {
            return atanh_near_one(x, d, prec) * int_pow(log(x), r) / x;
          };
          b.pref = inv_factorial(static_cast<unsigned long>(r));
          return b;
        });

    add({"arctan_logr", 1, "arctan(x) log^r(x)/(r! x) over (0,1)", "NONE",
         "log-power singularity at 0"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 1) throw DomainError("arctan_logr requires r >= 1");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          long r = p[0];
          b.f = [r](const Real& x, const Real&) {
            return atan(x) * int_pow(log(x), r) / x;
          };
          b.pref = inv_factorial(static_cast<unsigned long>(r));
          return b;
        });

    add({"mu_iterated", 1, "arctanh^(n+1)(x)/((n+1)! x) over (0,1)", "NONE",
         "log-power singularity at 1"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 0) throw DomainError("mu_iterated requires n >= 0");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          long n = p[0];
          b.f = [n, prec](const Real& x, const Real& d) {
            return int_pow(atanh_near_one(x, d, prec), n + 1) / x;
          };
          b.pref = inv_factorial(static_cast<unsigned long>(n + 1));
          return b;
        });

    add({"mu_general", 2, "(-1)^r arctanh^(n+1)(x)/(n+1)! log^r(x)/(r! x) over (0,1)",
         "NONE", "log-power singularities at both endpoints"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 0 || p[1] < 0) throw DomainError("mu_general requires r, n >= 0");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          long r = p[0], n = p[1];
          b.f = [r, n, prec](const Real& x, const Real& d) {
            Real v = int_pow(atanh_near_one(x, d, prec), n + 1) / x;
            if (r > 0) v = v * int_pow(log(x), r);
            return v;
          };
          b.pref = inv_factorial(static_cast<unsigned long>(n + 1)) *
                   inv_factorial(static_cast<unsigned long>(r));
          if (r % 2 == 1) b.pref = -b.pref;
          return b;
        });

    add({"arcsin_log1", 0, "-arcsin(x) log(x)/x over (0,1)", "NONE",
         "log singularity at 0"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          b.f = [](const Real& x, const Real&) { return asin(x) * log(x) / x; };
          b.pref = make_rational(-1);
          return b;
        });

    add({"arcsin_log2_conjecture", 0, "arcsin(x) log^2(x)/(2! x) over (0,1)", "NONE",
         "log-squared singularity at 0"},
        [](const std::vector<long>&, const PrecisionContext& ctx) {
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = Real::of_long(1, prec);
          b.f = [](const Real& x, const Real&) {
            Real lg = log(x);
            return asin(x) * lg * lg / x;
          };
          b.pref = make_rational(1, 2);
          return b;
        });

    add({"wallis", 1, "sin^n(x) over (0,pi/2)", "NONE", "analytic"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 0) throw DomainError("wallis requires n >= 0");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          long n = p[0];
          b.f = [n, prec](const Real& x, const Real&) {
            if (n == 0) return Real::of_long(1, prec);
            return int_pow(sin(x), n);
          };
          return b;
        });

    add({"w_moment", 1, "u^m/sqrt(1-u^2) over (0,1)", "X_EQ_SIN_Y",
         "inverse-square-root factor removed by substitution"},
        [](const std::vector<long>& p, const PrecisionContext& ctx) {
          if (p[0] < 0) throw DomainError("w_moment requires m >= 0");
          const mpfr_prec_t prec = ctx.prec_bits();
          Built b;
          b.a = Real::of_long(0, prec);
          b.b = mul_2si(Real::pi(prec), -1);
          long m = p[0];
          b.f = [m, prec](const Real& y, const Real&) {
            if (m == 0) return Real::of_long(1, prec);
            return int_pow(sin(y), m);
          };
          return b;
        });

    return v;
  }();
  return table;
}

}  // namespace

std::vector<IntegrandSpec> catalog() {
  std::vector<IntegrandSpec> out;
  for (const auto& e : entries()) out.push_back(e.spec);
  std::sort(out.begin(), out.end(),
            [](const IntegrandSpec& a, const IntegrandSpec& b) { return a.id < b.id; });
  return out;
}

QuadratureResult integral_by_id(const std::string& id, const std::vector<long>& params,
                                const PrecisionContext& ctx) {
  const CatalogEntry* entry = nullptr;
  for (const auto& e : entries()) {
    if (e.spec.id == id) {
      entry = &e;
      break;
    }
  }
  if (!entry) throw DomainError("unknown integrand id '" + id + "'");
  require_params(entry->spec, params);
  Built b = entry->build(params, ctx);
  QuadratureResult q = tanh_sinh_ep(b.f, b.a, b.b, ctx);
  if (b.pref == 1 && b.pref_pi_pow == 0) return q;

  const mpfr_prec_t prec = ctx.prec_bits();
  Real factor = Real::of_rational(b.pref, prec);
  if (b.pref_pi_pow != 0) factor = factor * pow_si(Real::pi(prec), b.pref_pi_pow);
  q.value = q.value * factor;
  q.error_estimate = q.error_estimate * abs(factor) +
                     mul_2si(max(abs(q.value), Real::of_long(1, prec)),
                             -static_cast<long>(prec) + 8);
  return q;
}

QuadratureResult log_sine_check(long n, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("log_sine_check requires n >= 1");
  const mpfr_prec_t prec = ctx.prec_bits();
  Real a = Real::of_long(0, prec);
  Real b = mul_2si(Real::pi(prec), -1);
  EndpointIntegrand f = [n](const Real& y, const Real&) {
    Real v = log(sin(y));
    if (n > 1) v = v * int_pow(y, n - 1);
    return v;
  };
  QuadratureResult q = tanh_sinh_ep(f, a, b, ctx);
  q.value = q.value * (-n);
  q.error_estimate = q.error_estimate * n;
  return q;
}

}  // namespace mzv::quadrature
