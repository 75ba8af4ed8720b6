#include <doctest.h>

#include "mzv/core.hpp"
#include "mzv/errors.hpp"
#include "test_util.hpp"

using namespace mzv;
using core::BoundedValue;

// Reference values computed independently (60-digit working precision,
// printed to 50) and frozen here.
static const char* kPi = "3.1415926535897932384626433832795028841971693993751";
static const char* kLog2 = "0.69314718055994530941723212145817656807550013436026";
static const char* kCatalan = "0.91596559417721901505460351493238411077414937428167";
static const char* kZeta2 = "1.6449340668482264364724151666460251892189499012068";
static const char* kZeta3 = "1.2020569031595942853997381615114499907649862923405";
static const char* kZeta5 = "1.0369277551433699263313654864570341680570809195019";
static const char* kZeta7 = "1.0083492773819228268397975498497967595998635605652";
static const char* kEta3 = "0.90154267736969571404980362113358749307373971925537";
static const char* kBeta3 = "0.96894614625936938048363484584691860006954026768391";
static const char* kBeta5 = "0.99615782807708806400631936863097528151139552938826";
static const char* kBeta7 = "0.99955450789053990949634654989905898300218848194998";
static const char* kS314 = "1.0044934496786301270694871652718222070686921418418";
static const char* kT3 = "1.0517997902646449997247708913225187419193630057979";

namespace {

void check_bounded(const BoundedValue& bv, const char* oracle, long tol10) {
  auto ref = tu::lit(oracle);
  CHECK(tu::close(bv.value, ref, tol10));
  // the claimed bound must cover the actual deviation from the reference
  CHECK(abs(bv.value - ref) <= bv.error + tu::pow10(-48));
}

}  // namespace

TEST_CASE("named constants against frozen references") {
  auto c = tu::ctx(40);
  check_bounded(core::constant(core::NamedConstant::kPi, c), kPi, -40);
  check_bounded(core::constant(core::NamedConstant::kLog2, c), kLog2, -40);
  check_bounded(core::constant(core::NamedConstant::kCatalan, c), kCatalan, -40);

  CHECK(core::parse_constant_name("pi") == core::NamedConstant::kPi);
  CHECK(core::parse_constant_name("log2") == core::NamedConstant::kLog2);
  CHECK(core::parse_constant_name("catalan") == core::NamedConstant::kCatalan);
  CHECK_THROWS_AS(core::parse_constant_name("phi"), DomainError);
  CHECK(core::constant_name(core::NamedConstant::kCatalan) == "catalan");
}

TEST_CASE("integer zeta, eta, beta") {
  auto c = tu::ctx(40);
  check_bounded(core::zeta_int(2, c), kZeta2, -40);
  check_bounded(core::zeta_int(3, c), kZeta3, -40);
  check_bounded(core::zeta_int(5, c), kZeta5, -40);
  check_bounded(core::zeta_int(7, c), kZeta7, -40);
  check_bounded(core::eta_int(3, c), kEta3, -40);
  check_bounded(core::eta_int(1, c), kLog2, -40);  // eta(1) = log 2
  check_bounded(core::beta_int(2, c), kCatalan, -40);
  check_bounded(core::beta_int(3, c), kBeta3, -40);
  check_bounded(core::beta_int(5, c), kBeta5, -40);
  check_bounded(core::beta_int(7, c), kBeta7, -40);

  CHECK_THROWS_AS(core::zeta_int(1, c), DomainError);
  CHECK_THROWS_AS(core::beta_int(1, c), DomainError);
  CHECK_THROWS_AS(core::eta_int(0, c), DomainError);
}

TEST_CASE("arithmetic-progression zeta sums") {
  auto c = tu::ctx(40);
  // sum over 3k+1 to the 4th power, reference summed directly elsewhere
  check_bounded(core::arith_prog_sum(3, 1, 4, c), kS314, -40);

  // step 1 recovers zeta, step 2 offset 1 recovers the odd lambda function
  auto z2 = core::arith_prog_sum(1, 1, 2, c);
  CHECK(tu::close(z2.value, tu::lit(kZeta2), -39));
  auto lambda3 = core::arith_prog_sum(2, 1, 3, c);
  CHECK(tu::close(lambda3.value, tu::lit(kT3), -39));  // = 7 zeta(3)/8

  CHECK_THROWS_AS(core::arith_prog_sum(1, 1, 1, c), DomainError);  // divergent
}

TEST_CASE("precision scales with the context") {
  auto lo = core::zeta_int(3, tu::ctx(20));
  auto hi = core::zeta_int(3, tu::ctx(60));
  CHECK(abs(lo.value - hi.value).to_double() < 1e-20);
  CHECK(hi.error < tu::pow10(-60));
  core::clear_constant_cache();
  auto hi2 = core::zeta_int(3, tu::ctx(60));
  CHECK(abs(hi.value - hi2.value).is_zero());
}
