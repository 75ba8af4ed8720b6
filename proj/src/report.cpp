#include "mzv/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "mzv/errors.hpp"

namespace mzv::report {

using identities::Verdict;
using nlohmann::json;

Report make_report(const std::vector<identities::VerificationResult>& results,
                   const PrecisionContext& ctx, double wall_time_seconds) {
  Report rep;
  rep.digits = ctx.digits;
  rep.series_cap = ctx.series_cap;
  rep.quad_max_level = ctx.quad_max_level;
  rep.wall_time_seconds = wall_time_seconds;
  rep.results.reserve(results.size());
  for (const auto& r : results) {
    ResultRow row;
    row.id = r.id;
    row.lhs_value = r.lhs_value.to_string(ctx.digits);
    row.rhs_value = r.rhs_value.to_string(ctx.digits);
    row.abs_diff = r.abs_diff.to_string(ctx.digits);
    row.error_budget = r.error_budget.to_string(ctx.digits);
    row.digits_agreed = r.digits_agreed;
    row.verdict = identities::verdict_name(r.verdict);
    rep.results.push_back(std::move(row));
    switch (r.verdict) {
      case Verdict::kPass:
        ++rep.summary.pass;
        break;
      case Verdict::kFail:
        ++rep.summary.fail;
        break;
      case Verdict::kFlagDiscrepancy:
        ++rep.summary.flagged;
        break;
      case Verdict::kConjectureSupported:
      case Verdict::kConjectureRefuted:
        ++rep.summary.conjectures;
        break;
    }
  }
  std::sort(rep.results.begin(), rep.results.end(),
            [](const ResultRow& a, const ResultRow& b) { return a.id < b.id; });
  return rep;
}

std::string to_json(const Report& r) {
  json j;
  j["tool_version"] = r.tool_version;
  j["context"] = {{"digits", r.digits},
                  {"series_cap", r.series_cap},
                  {"quad_max_level", r.quad_max_level}};
  json rows = json::array();
  for (const auto& row : r.results) {
    rows.push_back({{"id", row.id},
                    {"lhs_value", row.lhs_value},
                    {"rhs_value", row.rhs_value},
                    {"abs_diff", row.abs_diff},
                    {"error_budget", row.error_budget},
                    {"digits_agreed", row.digits_agreed},
                    {"verdict", row.verdict}});
  }
  j["results"] = std::move(rows);
  j["summary"] = {{"pass", r.summary.pass},
                  {"fail", r.summary.fail},
                  {"flagged", r.summary.flagged},
                  {"conjectures", r.summary.conjectures}};
  j["wall_time_seconds"] = r.wall_time_seconds;
  return j.dump(2) + "\n";
}

Report from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed report JSON: ") + e.what());
  }
  try {
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    const auto& ctx = j.at("context");
    r.digits = ctx.at("digits").get<int>();
    r.series_cap = ctx.at("series_cap").get<long>();
    r.quad_max_level = ctx.at("quad_max_level").get<int>();
    for (const auto& row : j.at("results")) {
      ResultRow rr;
      rr.id = row.at("id").get<std::string>();
      rr.lhs_value = row.at("lhs_value").get<std::string>();
      rr.rhs_value = row.at("rhs_value").get<std::string>();
      rr.abs_diff = row.at("abs_diff").get<std::string>();
      rr.error_budget = row.at("error_budget").get<std::string>();
      rr.digits_agreed = row.at("digits_agreed").get<int>();
      rr.verdict = row.at("verdict").get<std::string>();
      r.results.push_back(std::move(rr));
    }
    const auto& s = j.at("summary");
    r.summary.pass = s.at("pass").get<long>();
    r.summary.fail = s.at("fail").get<long>();
    r.summary.flagged = s.at("flagged").get<long>();
    r.summary.conjectures = s.at("conjectures").get<long>();
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw DomainError(std::string("report JSON missing fields: ") + e.what());
  }
}

namespace {

// shorten a full-precision decimal string to ~3 significant digits for the
// text table; the JSON form keeps everything
std::string brief(const std::string& full) {
  std::istringstream is(full);
  double d = 0;
  is >> d;
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << d;
  return os.str();
}

}  // namespace

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "verification report (tool " << r.tool_version << ", digits=" << r.digits
     << ", series_cap=" << r.series_cap << ", quad_max_level=" << r.quad_max_level
     << ")\n";
  size_t idw = 2;
  for (const auto& row : r.results) idw = std::max(idw, row.id.size());
  for (const auto& row : r.results) {
    os << std::left << std::setw(static_cast<int>(idw) + 2) << row.id
       << std::setw(22) << row.verdict << std::right << std::setw(3)
       << row.digits_agreed << " digits  diff " << brief(row.abs_diff)
       << "  budget " << brief(row.error_budget) << "\n";
  }
  os << "summary: pass=" << r.summary.pass << " fail=" << r.summary.fail
     << " flagged=" << r.summary.flagged << " conjectures=" << r.summary.conjectures
     << "  (" << std::fixed << std::setprecision(1) << r.wall_time_seconds << "s)\n";
  return os.str();
}

bool has_failures(const Report& r, bool strict) {
  for (const auto& row : r.results) {
    if (row.verdict == "FAIL") return true;
    if (strict &&
        (row.verdict == "FLAG_DISCREPANCY" || row.verdict == "CONJECTURE_REFUTED"))
      return true;
  }
  return false;
}

}  // namespace mzv::report
