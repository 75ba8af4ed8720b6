#include <doctest.h>

#include <set>

#include "mzv/errors.hpp"
#include "mzv/quadrature.hpp"
#include "mzv/series.hpp"
#include "test_util.hpp"

using namespace mzv;
using namespace mzv::quadrature;

static const char* kPi28 = "1.2337005501361698273543113749845188919142124259051";
static const char* kZeta2_4 = "0.41123351671205660911810379166150629730473747530170";
static const char* kCatalan = "0.91596559417721901505460351493238411077414937428167";
static const char* kPi3_32 = "0.96894614625936938048363484584691860006954026768391";
static const char* kI[7] = {
    nullptr,
    "1.0887930451518010652503444491188069736692918501846",
    "0.65847232569963413648709889716600527590558175624904",
    "0.56227926848469324079370793681982524375920703531093",
    "0.56009640682740926840108231550214030128971285114308",
    "0.61023647942964360816630148141147644072284360252846",
    "0.70545500443399489237457440769488550600498633988977",
};
static const char* kWallis[11] = {
    "1.5707963267948966192313216916397514420985846996876",
    "1.0000000000000000000000000000000000000000000000000",
    "0.78539816339744830961566084581987572104929234984378",
    "0.66666666666666666666666666666666666666666666666667",
    "0.58904862254808623221174563436490679078696926238283",
    "0.53333333333333333333333333333333333333333333333333",
    "0.49087385212340519350978802863742232565580771865236",
    "0.45714285714285714285714285714285714285714285714286",
    "0.42951462060797954432106452505774453494883175382082",
    "0.40634920634920634920634920634920634920634920634921",
    "0.38656315854718158988895807255197008145394857843873",
};

namespace {

void check_catalog_value(const char* id, std::vector<long> params, const char* oracle,
                         long tol10 = -40) {
  auto c = tu::ctx(40);
  auto r = integral_by_id(id, params, c);
  auto ref = tu::lit(oracle);
  CHECK(tu::close(r.value, ref, tol10));
  // the error estimate must cover the true deviation
  CHECK(abs(r.value - ref) <= r.error_estimate + tu::pow10(-48));
}

}  // namespace

TEST_CASE("catalog is sorted, unique, and validates parameters") {
  auto entries = catalog();
  CHECK(entries.size() >= 20);
  std::set<std::string> seen;
  std::string prev;
  for (const auto& e : entries) {
    CHECK(e.id > prev);
    prev = e.id;
    seen.insert(e.id);
  }
  for (const char* id : {"basel_arcsin", "thm2_catalan", "I_n", "wallis", "w_moment",
                         "mu_general", "logpow_xn"})
    CHECK(seen.count(id) == 1);

  auto c = tu::ctx(20);
  CHECK_THROWS_AS(integral_by_id("no_such_integral", {}, c), DomainError);
  CHECK_THROWS_AS(integral_by_id("I_n", {}, c), DomainError);    // missing n
  CHECK_THROWS_AS(integral_by_id("I_n", {0}, c), DomainError);   // n >= 1
  CHECK_THROWS_AS(integral_by_id("wallis", {-1}, c), DomainError);
  CHECK_THROWS_AS(integral_by_id("logpow_xn", {1}, c), DomainError);  // needs two
}

TEST_CASE("catalog integrals hit the frozen references") {
  check_catalog_value("basel_arcsin", {}, kPi28);
  check_catalog_value("basel_arcsin2_even", {}, kZeta2_4);
  check_catalog_value("thm2_catalan", {}, kCatalan);
  check_catalog_value("thm2_pi3_32", {}, kPi3_32);
  for (long n = 1; n <= 6; ++n) check_catalog_value("I_n", {n}, kI[n]);
}

TEST_CASE("sine power moments: quadrature, substitution route, closed form") {
  auto c = tu::ctx(40);
  for (long m = 0; m <= 10; ++m) {
    auto direct = integral_by_id("wallis", {m}, c);
    CHECK(tu::close(direct.value, tu::lit(kWallis[m]), -39));
    if (m <= 8) {
      auto subbed = integral_by_id("w_moment", {m}, c);
      CHECK(abs(direct.value - subbed.value) <=
            direct.error_estimate + subbed.error_estimate + tu::pow10(-45));
    }
    // closed form q * (pi/2)^p
    auto [q, p] = series::wallis_closed(static_cast<unsigned long>(m));
    Real closed = Real::of_rational(q, c.prec_bits());
    if (p) closed *= pow_si(Real::pi(c.prec_bits()), p);
    CHECK(tu::close(direct.value, closed, -39));
  }
}

TEST_CASE("log-sine route agrees with the direct arcsin-power integrals") {
  auto c = tu::ctx(40);
  for (long n = 1; n <= 4; ++n) {
    auto ls = log_sine_check(n, c);
    auto direct = integral_by_id("I_n", {n}, c);
    CHECK(abs(ls.value - direct.value) <=
          ls.error_estimate + direct.error_estimate + tu::pow10(-45));
  }
}

TEST_CASE("raw tanh-sinh on plain and endpoint-singular integrands") {
  auto c = tu::ctx(40);
  const mpfr_prec_t prec = c.prec_bits();
  Real zero = Real::of_long(0, prec), one = Real::of_long(1, prec);

  auto poly = tanh_sinh([](const Real& x) { return Real(x * x); }, zero, one, c);
  CHECK(tu::close(poly.value, Real::of_rational(make_rational(1, 3), prec), -40));
  CHECK(poly.levels_used >= 2);

  // 1/sqrt(x(1-x)): inverse square-root singularities at both endpoints;
  // {x, 1-x} = {d, 1-d}, so the integrand is exactly 1/sqrt(d (1-d))
  auto circle = tanh_sinh_ep(
      [prec](const Real& x, const Real& d) {
        (void)x;
        Real other = Real::of_long(1, prec) - d;
        return Real(Real::of_long(1, prec) / sqrt(d * other));
      },
      zero, one, c);
  CHECK(tu::close(circle.value, Real::pi(prec), -39));

  // a non-integrable pole must be reported, not silently averaged
  mzv::PrecisionContext tight = tu::ctx(30);
  tight.quad_max_level = 8;
  CHECK_THROWS_AS(tanh_sinh_ep(
                      [prec](const Real& x, const Real& d) {
                        (void)x;
                        return Real(Real::of_long(1, prec) / d);
                      },
                      zero, one, tight),
                  EvaluationError);
}

TEST_CASE("node tables rebuild identically after a cache clear") {
  auto c = tu::ctx(30);
  auto before = integral_by_id("basel_arcsin", {}, c);
  clear_node_cache();
  auto after = integral_by_id("basel_arcsin", {}, c);
  CHECK(abs(before.value - after.value).is_zero());
  CHECK(before.levels_used == after.levels_used);
}
