// mzv: evaluate nested zeta-like sums, series, integrals and closed forms,
// compute duals, and run the identity verification suite.
//
// Exit codes: 0 ok, 1 verification failures, 2 usage or parse error,
// 3 evaluation error, 4 I/O error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mzv/core.hpp"
#include "mzv/errors.hpp"
#include "mzv/identities.hpp"
#include "mzv/multisum.hpp"
#include "mzv/precision.hpp"
#include "mzv/quadrature.hpp"
#include "mzv/report.hpp"
#include "mzv/series.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEval = 3;
constexpr int kExitIo = 4;

std::string format_real(const mzv::Real& v, int digits) {
  if (digits < 1) digits = 1;
  int need = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, v.raw());
  std::vector<char> buf(static_cast<size_t>(need) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v.raw());
  return std::string(buf.data());
}

std::string brief_double(const mzv::Real& v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2e", v.to_double());
  return std::string(buf);
}

int certified_digits(const mzv::core::BoundedValue& bv, const mzv::PrecisionContext& ctx) {
  if (!bv.error.is_finite() || !bv.value.is_finite()) return 0;
  if (bv.error.is_zero()) return ctx.digits;
  mzv::Real scale = max(mzv::Real::of_long(1, bv.value.prec()), abs(bv.value));
  double lg = (bv.error / scale).log10_abs();
  long d = static_cast<long>(-lg);
  if (d < 0) d = 0;
  if (d > ctx.digits) d = ctx.digits;
  return static_cast<int>(d);
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t used = 0;
    long v = std::stol(part, &used);
    if (used != part.size()) throw mzv::DomainError("bad integer '" + part + "'");
    out.push_back(v);
  }
  return out;
}

struct EvalArgs {
  std::string kind;
  std::string name;
  std::string n_list;
  int digits = 30;
  std::optional<long> terms;
};

int run_eval(const EvalArgs& a) {
  mzv::PrecisionContext ctx;
  ctx.digits = a.digits;
  ctx.validate();
  std::vector<long> params = parse_long_list(a.n_list);

  if (a.kind == "zeta" || a.kind == "t" || a.kind == "mu" || a.kind == "mubar") {
    auto kind = mzv::multisum::parse_kind(a.kind);
    auto idx = mzv::multisum::MultiIndex::parse(a.name);
    auto mv = mzv::multisum::multisum_eval(kind, idx, ctx, a.terms);
    std::cout << format_real(mv.value, a.digits) << "\n";
    std::cout << "  " << a.kind << "(" << idx.to_string() << ") truncated at N=" << mv.n_truncation
              << ", tail <= " << brief_double(mv.tail_bound) << ", certified "
              << mv.certified_digits << " digits\n";
    return kExitOk;
  }
  if (a.kind == "const") {
    auto bv = mzv::core::constant(mzv::core::parse_constant_name(a.name), ctx);
    std::cout << format_real(bv.value, a.digits) << "\n";
    std::cout << "  error <= " << brief_double(bv.error) << ", certified "
              << certified_digits(bv, ctx) << " digits\n";
    return kExitOk;
  }
  if (a.kind == "closed") {
    auto family = mzv::multisum::parse_family(a.name);
    long n = params.empty() ? 1 : params[0];
    auto bv = mzv::multisum::closed_form(family, n, ctx);
    std::cout << format_real(bv.value, a.digits) << "\n";
    std::cout << "  " << a.name << "[n=" << n << "] = "
              << mzv::multisum::closed_form_symbolic(family, n).to_string() << "\n";
    std::cout << "  error <= " << brief_double(bv.error) << ", certified "
              << certified_digits(bv, ctx) << " digits\n";
    return kExitOk;
  }
  if (a.kind == "integral") {
    auto qr = mzv::quadrature::integral_by_id(a.name, params, ctx);
    mzv::core::BoundedValue bv{qr.value, qr.error_estimate};
    std::cout << format_real(bv.value, a.digits) << "\n";
    std::cout << "  tanh-sinh levels " << qr.levels_used << ", error <= "
              << brief_double(bv.error) << ", certified " << certified_digits(bv, ctx)
              << " digits\n";
    return kExitOk;
  }
  throw mzv::DomainError("unknown eval kind '" + a.kind +
                         "' (want zeta|t|mu|mubar|const|closed|integral)");
}

int run_series(const std::string& name, std::optional<long> power, long terms) {
  if (terms < 1) throw mzv::DomainError("--terms must be >= 1");
  mzv::series::StreamPtr s;
  if (name == "arcsin-pow") {
    if (!power) throw mzv::DomainError("arcsin-pow needs a power, e.g. `series arcsin-pow 2`");
    if (*power < 1) throw mzv::DomainError("arcsin-pow power must be >= 1");
    s = mzv::series::arcsin_pow_stream(static_cast<unsigned long>(*power));
  } else {
    if (power) throw mzv::DomainError("only arcsin-pow takes a power argument");
    s = mzv::series::named_stream(name);
  }
  std::cout << s->label() << "  [" << mzv::series::form_tag_name(s->form_tag())
            << ", prefactor (pi/2)^" << s->pi_power() << "]\n";
  std::cout << "  k    a(k)             literal x-power coefficient\n";
  for (long k = 0; k < terms; ++k) {
    std::ostringstream a_str;
    a_str << s->coeff(k).get_str();
    std::cout << "  " << k << "    " << a_str.str();
    for (size_t pad = a_str.str().size(); pad < 17; ++pad) std::cout << ' ';
    std::cout << s->literal_coeff(k).get_str() << " * x^" << s->term_power(k) << "\n";
  }
  return kExitOk;
}

int run_dual(const std::string& index_text) {
  auto idx = mzv::multisum::MultiIndex::parse(index_text);
  if (!idx.admissible())
    throw mzv::DomainError("index " + idx.to_string() +
                           " is not admissible (leading exponent must be >= 2)");
  std::cout << mzv::multisum::dual_index(idx).to_string() << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string pattern;  // positional
  std::string filter;   // --filter
  bool all = false;
  bool strict = false;
  int digits = 30;
  std::string format = "text";
  std::string out_path;
};

int run_verify(const VerifyArgs& a) {
  if (!a.pattern.empty() && !a.filter.empty())
    throw mzv::DomainError("give either a positional id/pattern or --filter, not both");
  if (a.format != "text" && a.format != "json")
    throw mzv::DomainError("--format must be text or json");
  std::string filter = !a.pattern.empty() ? a.pattern : a.filter;
  // --all is the default when no selector is given; it mainly documents intent
  (void)a.all;

  mzv::PrecisionContext ctx;
  ctx.digits = a.digits;
  ctx.validate();

  auto t0 = std::chrono::steady_clock::now();
  auto results = mzv::identities::verify_all(ctx, filter);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!filter.empty() && results.empty())
    throw mzv::DomainError("no identities match '" + filter + "'");

  auto rep = mzv::report::make_report(results, ctx, wall);
  std::string payload =
      a.format == "json" ? mzv::report::to_json(rep) : mzv::report::to_text(rep);

  if (!a.out_path.empty()) {
    std::ofstream ofs(a.out_path, std::ios::binary);
    if (!ofs) {
      std::cerr << "error: cannot open '" << a.out_path << "' for writing\n";
      return kExitIo;
    }
    ofs << payload;
    ofs.flush();
    if (!ofs) {
      std::cerr << "error: short write to '" << a.out_path << "'\n";
      return kExitIo;
    }
  } else {
    std::cout << payload;
  }
  return mzv::report::has_failures(rep, a.strict) ? kExitVerifyFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nested zeta-like sums: evaluation, series, duality, verification"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate one object to a digit target");
  eval_cmd->add_option("kind", eval_args.kind, "zeta|t|mu|mubar|const|closed|integral")
      ->required();
  eval_cmd->add_option("name", eval_args.name, "index like 3,{2}^2, or a name/id")
      ->required();
  eval_cmd->add_option("--digits", eval_args.digits, "decimal digit target");
  eval_cmd->add_option("--terms", eval_args.terms,
                       "truncation point for the nested-sum kinds");
  eval_cmd->add_option("--n", eval_args.n_list,
                       "integer parameter(s), comma separated, for closed/integral");

  std::string series_name;
  std::optional<long> series_power;
  long series_terms = 8;
  auto* series_cmd = app.add_subcommand("series", "print exact series coefficients");
  series_cmd->add_option("name", series_name, "stream name, or arcsin-pow")->required();
  series_cmd->add_option("power", series_power, "power for arcsin-pow");
  series_cmd->add_option("--terms", series_terms, "number of rows");

  std::string dual_index;
  auto* dual_cmd = app.add_subcommand("dual", "dual of an admissible index");
  dual_cmd->add_option("index", dual_index, "e.g. 2,1 or 4,{1}^3")->required();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "run the identity suite");
  verify_cmd->add_option("pattern", verify_args.pattern, "id or glob pattern");
  verify_cmd->add_flag("--all", verify_args.all, "verify every record (default)");
  verify_cmd->add_option("--filter", verify_args.filter, "glob over record ids");
  verify_cmd->add_option("--digits", verify_args.digits, "decimal digit target");
  verify_cmd->add_option("--format", verify_args.format, "text|json");
  verify_cmd->add_option("--out", verify_args.out_path, "write output to a file");
  verify_cmd->add_flag("--strict", verify_args.strict,
                       "flagged discrepancies and refuted conjectures also fail");

  VerifyArgs report_args;
  report_args.format = "json";
  auto* report_cmd = app.add_subcommand("report", "verify and export the JSON report");
  report_cmd->add_option("--filter", report_args.filter, "glob over record ids");
  report_cmd->add_option("--digits", report_args.digits, "decimal digit target");
  report_cmd->add_option("--out", report_args.out_path, "write report to a file");
  report_cmd->add_flag("--strict", report_args.strict,
                       "flagged discrepancies and refuted conjectures also fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (series_cmd->parsed()) return run_series(series_name, series_power, series_terms);
    if (dual_cmd->parsed()) return run_dual(dual_index);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    if (report_cmd->parsed()) return run_verify(report_args);
  } catch (const mzv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mzv::EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitEval;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEval;
  }
  return kExitUsage;
}
