#include <doctest.h>

#include <string>

#include "mzv/errors.hpp"
#include "mzv/report.hpp"
#include "test_util.hpp"

using namespace mzv;
using namespace mzv::report;

namespace {

Report sample_report(int digits = 20, const std::string& filter = "wallis_*") {
  auto c = tu::ctx(digits);
  auto rows = identities::verify_all(c, filter);
  return make_report(rows, c, 1.25);
}

}  // namespace

TEST_CASE("summary counts partition the results") {
  auto rep = sample_report(20, "wallis_*");
  CHECK(rep.results.size() == 11);
  CHECK(rep.summary.pass + rep.summary.fail + rep.summary.flagged +
            rep.summary.conjectures ==
        static_cast<long>(rep.results.size()));
  CHECK(rep.summary.pass == 11);
  CHECK(rep.digits == 20);
  std::string prev;
  for (const auto& row : rep.results) {
    CHECK(row.id > prev);
    prev = row.id;
    CHECK(row.digits_agreed >= 0);
    CHECK(!row.lhs_value.empty());
  }

  auto mixed = sample_report(20, "a*");  // covers PASS and FLAG_DISCREPANCY
  CHECK(mixed.summary.flagged >= 2);
  CHECK(mixed.summary.pass + mixed.summary.fail + mixed.summary.flagged +
            mixed.summary.conjectures ==
        static_cast<long>(mixed.results.size()));
}

TEST_CASE("json round trip preserves every field") {
  auto rep = sample_report();
  auto back = from_json(to_json(rep));
  CHECK(back.tool_version == rep.tool_version);
  CHECK(back.digits == rep.digits);
  CHECK(back.series_cap == rep.series_cap);
  CHECK(back.quad_max_level == rep.quad_max_level);
  CHECK(back.wall_time_seconds == doctest::Approx(rep.wall_time_seconds));
  CHECK(back.summary.pass == rep.summary.pass);
  CHECK(back.summary.fail == rep.summary.fail);
  CHECK(back.summary.flagged == rep.summary.flagged);
  CHECK(back.summary.conjectures == rep.summary.conjectures);
  REQUIRE(back.results.size() == rep.results.size());
  for (size_t i = 0; i < rep.results.size(); ++i) {
    CHECK(back.results[i].id == rep.results[i].id);
    CHECK(back.results[i].lhs_value == rep.results[i].lhs_value);
    CHECK(back.results[i].rhs_value == rep.results[i].rhs_value);
    CHECK(back.results[i].abs_diff == rep.results[i].abs_diff);
    CHECK(back.results[i].error_budget == rep.results[i].error_budget);
    CHECK(back.results[i].digits_agreed == rep.results[i].digits_agreed);
    CHECK(back.results[i].verdict == rep.results[i].verdict);
  }
  // and serializing the parsed copy is byte-identical
  CHECK(to_json(back) == to_json(rep));
}

TEST_CASE("identical runs produce identical json apart from the clock") {
  auto a = sample_report();
  auto b = sample_report();
  b.wall_time_seconds = a.wall_time_seconds;
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("failure detection honors strict mode") {
  Report rep;
  ResultRow pass{"a", "1", "1", "0", "1e-20", 20, "PASS"};
  ResultRow flag{"b", "1", "3", "2", "1e-20", 0, "FLAG_DISCREPANCY"};
  ResultRow refuted{"c", "1", "3", "2", "1e-20", 0, "CONJECTURE_REFUTED"};
  ResultRow fail{"d", "1", "3", "2", "1e-20", 0, "FAIL"};

  rep.results = {pass, flag, refuted};
  CHECK_FALSE(has_failures(rep, false));
  CHECK(has_failures(rep, true));

  rep.results = {pass};
  CHECK_FALSE(has_failures(rep, true));

  rep.results = {pass, fail};
  CHECK(has_failures(rep, false));
}

TEST_CASE("text rendering carries the summary") {
  auto rep = sample_report();
  auto text = to_text(rep);
  CHECK(text.find("summary: pass=11") != std::string::npos);
  CHECK(text.find("wallis_0") != std::string::npos);
  CHECK(text.find("digits=20") != std::string::npos);
}

TEST_CASE("malformed json is rejected") {
  CHECK_THROWS_AS(from_json("not json at all"), DomainError);
  CHECK_THROWS_AS(from_json("{\"tool_version\": \"x\"}"), DomainError);
}
