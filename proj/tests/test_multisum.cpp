#include <doctest.h>

#include <functional>
#include <vector>

#include "mzv/errors.hpp"
#include "mzv/multisum.hpp"
#include "mzv/symbolic.hpp"
#include "test_util.hpp"

using namespace mzv;
using namespace mzv::multisum;
using symbolic::Atom;
using symbolic::Combo;

static const char* kZeta3 = "1.2020569031595942853997381615114499907649862923405";
static const char* kZeta3_8 = "0.15025711289494928567496727018893124884562328654256";
static const char* kT3 = "1.0517997902646449997247708913225187419193630057979";
static const char* kT21 = "0.32923616284981706824354944858300263795279087812452";
static const char* kMu21 = "0.52589989513232249986238544566125937095968150289897";
static const char* kMubar21 = "0.19666373228250543161883599707825673300689062477445";
static const char* kT32 = "0.053854967123544725176175122915065641995456529614424";
static const char* kZeta32 = "0.22881039760335375976874614894168879193250934271988";
static const char* kT322 = "0.0021091851327528231437723603628577030110944602466052";

TEST_CASE("multi-index parsing, shorthand, weight and depth") {
  auto i = MultiIndex::parse("3,{2}^4");
  CHECK(i.parts() == std::vector<long>{3, 2, 2, 2, 2});
  CHECK(i.weight() == 11);
  CHECK(i.depth() == 5);
  CHECK(i.admissible());
  CHECK(i.to_string() == "3,2,2,2,2");

  CHECK(MultiIndex::parse("{2}^3").parts() == std::vector<long>{2, 2, 2});
  CHECK(MultiIndex::parse("4").parts() == std::vector<long>{4});
  CHECK_FALSE(MultiIndex::parse("1,2").admissible());
  CHECK(MultiIndex::repeat(2, 3).parts() == std::vector<long>{2, 2, 2});

  CHECK_THROWS_AS(MultiIndex::parse(""), DomainError);
  CHECK_THROWS_AS(MultiIndex::parse("3,x"), DomainError);
  CHECK_THROWS_AS(MultiIndex::parse("0,2"), DomainError);
  CHECK_THROWS_AS(MultiIndex::repeat(2, 0), DomainError);
}

TEST_CASE("duality: known pairs and involution over small weights") {
  CHECK(dual_index(MultiIndex::parse("2,1")).to_string() == "3");
  CHECK(dual_index(MultiIndex::parse("3")).to_string() == "2,1");
  CHECK(dual_index(MultiIndex::parse("3,1")).to_string() == "3,1");
  CHECK(dual_index(MultiIndex::parse("2")).to_string() == "2");
  CHECK(dual_index(MultiIndex::parse("4,1,1,1")).to_string() == "5,1,1");
  CHECK(dual_index(MultiIndex::parse("5,1,1")).to_string() == "4,1,1,1");
  CHECK(dual_index(MultiIndex::parse("3,2")).to_string() == "2,2,1");
  CHECK_THROWS_AS(dual_index(MultiIndex::parse("1,2")), DomainError);

  // enumeration: every admissible index of weight <= 8
  std::vector<std::vector<long>> all;
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long rem) {
    if (rem == 0) {
      if (!cur.empty() && cur.front() >= 2) all.push_back(cur);
      return;
    }
    for (long p = 1; p <= rem; ++p) {
      if (cur.empty() && p < 2) continue;
      cur.push_back(p);
      rec(rem - p);
      cur.pop_back();
    }
  };
  for (long w = 2; w <= 8; ++w) rec(w);
  CHECK(all.size() == 127);  // 2^(w-2) admissible indices per weight w
  for (const auto& parts : all) {
    MultiIndex idx(parts);
    MultiIndex d = dual_index(idx);
    CHECK(d.admissible());
    CHECK(d.weight() == idx.weight());
    CHECK(dual_index(d).parts() == idx.parts());
  }
}

TEST_CASE("depth-one parity sums split zeta") {
  auto c = tu::ctx(30);
  auto mu3 = multisum_eval(SumKind::kMu, MultiIndex::parse("3"), c);
  auto mubar3 = multisum_eval(SumKind::kMuBar, MultiIndex::parse("3"), c);
  CHECK(abs(mu3.value - tu::lit(kT3)) <= mu3.tail_bound);
  CHECK(abs(mubar3.value - tu::lit(kZeta3_8)) <= mubar3.tail_bound);
  Real total = mu3.value + mubar3.value;
  CHECK(abs(total - tu::lit(kZeta3)) <= mu3.tail_bound + mubar3.tail_bound);
}

TEST_CASE("depth-two values against frozen references") {
  auto c = tu::ctx(30);
  struct Row {
    SumKind kind;
    const char* idx;
    const char* oracle;
  } rows[] = {
      {SumKind::kZeta, "2,1", kZeta3},   {SumKind::kT, "2,1", kT21},
      {SumKind::kMu, "2,1", kMu21},      {SumKind::kMuBar, "2,1", kMubar21},
      {SumKind::kT, "3,2", kT32},        {SumKind::kZeta, "3,2", kZeta32},
      {SumKind::kT, "3,2,2", kT322},
  };
  for (const auto& r : rows) {
    auto v = multisum_eval(r.kind, MultiIndex::parse(r.idx), c);
    CHECK(abs(v.value - tu::lit(r.oracle)) <= v.tail_bound);
    CHECK(v.certified_digits >= 3);
  }
}

TEST_CASE("truncation tails survive quadrupling N") {
  auto c = tu::ctx(30);
  for (SumKind kind : {SumKind::kZeta, SumKind::kT, SumKind::kMu, SumKind::kMuBar}) {
    auto lo = multisum_eval(kind, MultiIndex::parse("2,1"), c, 5000);
    auto hi = multisum_eval(kind, MultiIndex::parse("2,1"), c, 20000);
    CHECK(abs(lo.value - hi.value) <= lo.tail_bound);
    CHECK(lo.tail_bound.to_double() < 1e-2);
  }
  auto deep = multisum_eval(SumKind::kZeta, MultiIndex::parse("3,{2}^2"), c, 2000);
  auto deep2 = multisum_eval(SumKind::kZeta, MultiIndex::parse("3,{2}^2"), c, 8000);
  CHECK(abs(deep.value - deep2.value) <= deep.tail_bound);
}

TEST_CASE("evaluation refuses to certify nothing") {
  auto c = tu::ctx(30);
  CHECK_THROWS_AS(multisum_eval(SumKind::kZeta, MultiIndex::parse("2,1"), c, 2),
                  EvaluationError);
  CHECK_THROWS_AS(multisum_eval(SumKind::kZeta, MultiIndex::parse("1,2"), c), DomainError);
  auto ok = multisum_eval(SumKind::kZeta, MultiIndex::parse("2,1"), c, 3000);
  CHECK(ok.certified_digits >= 1);
  CHECK(ok.n_truncation == 3000);
}

namespace {

Rational combo_coeff(const Combo& c, Atom a) { return c.coeff(a); }

void check_I_table(long n, std::vector<std::pair<Atom, Rational>> expect) {
  Combo c = I_closed_symbolic(n);
  CHECK(c.terms().size() == expect.size());
  for (const auto& [atom, q] : expect) CHECK(combo_coeff(c, atom) == q);
}

Atom log2_pi(int pi_pow) { return Atom{Atom::Base::kLog2, 1, pi_pow}; }
Atom zeta_pi(long arg, int pi_pow) { return Atom{Atom::Base::kZeta, arg, pi_pow}; }

}  // namespace

TEST_CASE("closed forms for I(n) are coefficient-exact") {
  check_I_table(1, {{log2_pi(1), make_rational(1, 2)}});
  check_I_table(2, {{log2_pi(2), make_rational(1, 4)}, {zeta_pi(3, 0), make_rational(-7, 8)}});
  check_I_table(3, {{log2_pi(3), make_rational(1, 8)}, {zeta_pi(3, 1), make_rational(-9, 16)}});
  check_I_table(4, {{log2_pi(4), make_rational(1, 16)},
                    {zeta_pi(3, 2), make_rational(-9, 16)},
                    {zeta_pi(5, 0), make_rational(93, 32)}});
  check_I_table(5, {{log2_pi(5), make_rational(1, 32)},
                    {zeta_pi(3, 3), make_rational(-15, 32)},
                    {zeta_pi(5, 1), make_rational(225, 64)}});
  check_I_table(6, {{log2_pi(6), make_rational(1, 64)},
                    {zeta_pi(3, 4), make_rational(-45, 128)},
                    {zeta_pi(5, 2), make_rational(675, 128)},
                    {zeta_pi(7, 0), make_rational(-5715, 256)}});
  CHECK_THROWS_AS(I_closed_symbolic(0), DomainError);
}

TEST_CASE("closed forms for the repeated-argument families are coefficient-exact") {
  Atom pi_only2{Atom::Base::kOne, 0, 2};
  Atom pi_only4{Atom::Base::kOne, 0, 4};
  Atom pi_only6{Atom::Base::kOne, 0, 6};
  Atom pi_only8{Atom::Base::kOne, 0, 8};

  // zeta({2}^n) = pi^{2n}/(2n+1)!
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta2Rep, 1), pi_only2) ==
        make_rational(1, 6));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta2Rep, 2), pi_only4) ==
        make_rational(1, 120));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta2Rep, 3), pi_only6) ==
        make_rational(1, 5040));
  // t({2}^n) = pi^{2n}/(4^n (2n)!)
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT2Rep, 1), pi_only2) ==
        make_rational(1, 8));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT2Rep, 2), pi_only4) ==
        make_rational(1, 384));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT2Rep, 3), pi_only6) ==
        make_rational(1, 46080));
  // weight-4 repeats
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta4Rep, 1), pi_only4) ==
        make_rational(1, 90));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta4Rep, 2), pi_only8) ==
        make_rational(1, 113400));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT4Rep, 1), pi_only4) ==
        make_rational(1, 96));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT4Rep, 2), pi_only8) ==
        make_rational(1, 645120));

  // the height-one family t(3, {2}^n) and zeta(3, {2}^n)
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT32Rep, 0), zeta_pi(3, 0)) ==
        make_rational(7, 8));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT32Rep, 1), zeta_pi(3, 2)) ==
        make_rational(3, 64));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT32Rep, 1), zeta_pi(5, 0)) ==
        make_rational(-31, 64));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT32Rep, 2), zeta_pi(3, 4)) ==
        make_rational(1, 1024));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT32Rep, 2), zeta_pi(5, 2)) ==
        make_rational(-15, 512));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kT32Rep, 2), zeta_pi(7, 0)) ==
        make_rational(381, 2048));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta32Rep, 0), zeta_pi(3, 0)) ==
        Rational(1));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta32Rep, 1), zeta_pi(3, 2)) ==
        make_rational(1, 2));
  CHECK(combo_coeff(closed_form_symbolic(ClosedFamily::kZeta32Rep, 1), zeta_pi(5, 0)) ==
        make_rational(-11, 2));
}

TEST_CASE("closed forms evaluate to the frozen decimals") {
  auto c = tu::ctx(40);
  auto t32 = closed_form(ClosedFamily::kT32Rep, 1, c);
  CHECK(tu::close(t32.value, tu::lit(kT32), -40));
  auto z32 = closed_form(ClosedFamily::kZeta32Rep, 1, c);
  CHECK(tu::close(z32.value, tu::lit(kZeta32), -40));
  auto t322 = closed_form(ClosedFamily::kT32Rep, 2, c);
  CHECK(tu::close(t322.value, tu::lit(kT322), -40));
}

TEST_CASE("name round trips") {
  for (auto k : {SumKind::kZeta, SumKind::kT, SumKind::kMu, SumKind::kMuBar})
    CHECK(parse_kind(kind_name(k)) == k);
  for (auto f : {ClosedFamily::kZeta2Rep, ClosedFamily::kT2Rep, ClosedFamily::kZeta4Rep,
                 ClosedFamily::kT4Rep, ClosedFamily::kZeta32Rep, ClosedFamily::kT32Rep})
    CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_kind("sigma"), DomainError);
  CHECK_THROWS_AS(parse_family("zeta_9rep"), DomainError);
}
