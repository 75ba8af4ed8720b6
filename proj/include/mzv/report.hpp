#pragma once

#include <string>
#include <vector>

#include "mzv/identities.hpp"
#include "mzv/precision.hpp"

namespace mzv::report {

inline constexpr const char* kToolVersion = "0.1.0";

// One verification result, with the high-precision values carried as decimal
// strings so a report survives a JSON round trip byte for byte.
struct ResultRow {
  std::string id;
  std::string lhs_value;
  std::string rhs_value;
  std::string abs_diff;
  std::string error_budget;
  int digits_agreed = 0;
  std::string verdict;
};

struct Summary {
  long pass = 0;
  long fail = 0;
  long flagged = 0;
  long conjectures = 0;  // supported and refuted both count here
};

struct Report {
  std::string tool_version = kToolVersion;
  int digits = 0;
  long series_cap = 0;
  int quad_max_level = 0;
  std::vector<ResultRow> results;  // sorted by id
  Summary summary;
  double wall_time_seconds = 0.0;
};

Report make_report(const std::vector<identities::VerificationResult>& results,
                   const PrecisionContext& ctx, double wall_time_seconds);

// Deterministic: two reports over the same results at the same context differ
// only in wall_time_seconds.
std::string to_json(const Report& r);
Report from_json(const std::string& text);  // throws DomainError on bad input

std::string to_text(const Report& r);

// true if the report should fail the run: any FAIL, or in strict mode also
// any FLAG_DISCREPANCY / CONJECTURE_REFUTED
bool has_failures(const Report& r, bool strict);

}  // namespace mzv::report
