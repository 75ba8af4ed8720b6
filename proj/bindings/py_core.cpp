// Python bindings: a thin shim over the C++ library.  High-precision values
// cross the boundary as decimal strings (plus a convenience double); exact
// rationals as "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "mzv/core.hpp"
#include "mzv/errors.hpp"
#include "mzv/identities.hpp"
#include "mzv/multisum.hpp"
#include "mzv/precision.hpp"
#include "mzv/quadrature.hpp"
#include "mzv/report.hpp"
#include "mzv/series.hpp"

namespace py = pybind11;

namespace {

mzv::PrecisionContext make_ctx(int digits) {
  mzv::PrecisionContext ctx;
  ctx.digits = digits;
  ctx.validate();
  return ctx;
}

py::dict bounded_dict(const mzv::core::BoundedValue& bv, int digits) {
  py::dict d;
  d["value"] = bv.value.to_string(digits);
  d["value_float"] = bv.value.to_double();
  d["error"] = bv.error.to_double();
  return d;
}

py::dict result_dict(const mzv::identities::VerificationResult& r, int digits) {
  py::dict d;
  d["id"] = r.id;
  d["lhs_value"] = r.lhs_value.to_string(digits);
  d["rhs_value"] = r.rhs_value.to_string(digits);
  d["abs_diff"] = r.abs_diff.to_string(digits);
  d["error_budget"] = r.error_budget.to_string(digits);
  d["digits_agreed"] = r.digits_agreed;
  d["verdict"] = mzv::identities::verdict_name(r.verdict);
  return d;
}

mzv::series::StreamPtr stream_by_name(const std::string& name, std::optional<long> power) {
  if (name == "arcsin-pow") {
    if (!power || *power < 1) throw mzv::DomainError("arcsin-pow needs a power >= 1");
    return mzv::series::arcsin_pow_stream(static_cast<unsigned long>(*power));
  }
  if (power) throw mzv::DomainError("only arcsin-pow takes a power");
  return mzv::series::named_stream(name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "nested zeta-like sums: evaluation and identity verification";
  m.attr("__version__") = mzv::report::kToolVersion;

  py::register_exception<mzv::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<mzv::EvaluationError>(m, "EvaluationError", PyExc_RuntimeError);

  m.def(
      "eval_sum",
      [](const std::string& kind, const std::string& index, int digits,
         std::optional<long> n) {
        auto ctx = make_ctx(digits);
        auto k = mzv::multisum::parse_kind(kind);
        auto idx = mzv::multisum::MultiIndex::parse(index);
        auto mv = mzv::multisum::multisum_eval(k, idx, ctx, n);
        py::dict d;
        d["value"] = mv.value.to_string(digits);
        d["value_float"] = mv.value.to_double();
        d["tail_bound"] = mv.tail_bound.to_double();
        d["n_truncation"] = mv.n_truncation;
        d["certified_digits"] = mv.certified_digits;
        return d;
      },
      py::arg("kind"), py::arg("index"), py::arg("digits") = 30,
      py::arg("n") = std::nullopt,
      "Evaluate zeta/t/mu/mubar at a multi-index like '3,{2}^2'.");

  m.def(
      "constant",
      [](const std::string& name, int digits) {
        auto ctx = make_ctx(digits);
        return bounded_dict(mzv::core::constant(mzv::core::parse_constant_name(name), ctx),
                            digits);
      },
      py::arg("name"), py::arg("digits") = 30, "pi, log2 or catalan.");

  m.def(
      "closed_form",
      [](const std::string& family, long n, int digits) {
        auto ctx = make_ctx(digits);
        auto f = mzv::multisum::parse_family(family);
        py::dict d = bounded_dict(mzv::multisum::closed_form(f, n, ctx), digits);
        d["expression"] = mzv::multisum::closed_form_symbolic(f, n).to_string();
        return d;
      },
      py::arg("family"), py::arg("n"), py::arg("digits") = 30,
      "Closed form for a repeated-argument family member.");

  m.def(
      "integral",
      [](const std::string& id, const std::vector<long>& params, int digits) {
        auto ctx = make_ctx(digits);
        auto qr = mzv::quadrature::integral_by_id(id, params, ctx);
        py::dict d;
        d["value"] = qr.value.to_string(digits);
        d["value_float"] = qr.value.to_double();
        d["error"] = qr.error_estimate.to_double();
        d["levels_used"] = qr.levels_used;
        return d;
      },
      py::arg("id"), py::arg("params") = std::vector<long>{}, py::arg("digits") = 30,
      "Evaluate a catalog integral by id.");

  m.def("integral_ids", [] {
    std::vector<std::string> ids;
    for (const auto& e : mzv::quadrature::catalog()) ids.push_back(e.id);
    return ids;
  });

  m.def(
      "dual",
      [](const std::string& index) {
        auto idx = mzv::multisum::MultiIndex::parse(index);
        if (!idx.admissible())
          throw mzv::DomainError("index " + idx.to_string() + " is not admissible");
        return mzv::multisum::dual_index(idx).to_string();
      },
      py::arg("index"), "Dual of an admissible index, e.g. dual('2,1') == '3'.");

  m.def(
      "series_coefficients",
      [](const std::string& name, long terms, std::optional<long> power) {
        if (terms < 1) throw mzv::DomainError("terms must be >= 1");
        auto s = stream_by_name(name, power);
        py::list rows;
        for (long k = 0; k < terms; ++k) {
          py::dict row;
          row["k"] = k;
          row["a"] = s->coeff(k).get_str();
          row["literal"] = s->literal_coeff(k).get_str();
          row["power"] = s->term_power(k);
          rows.append(std::move(row));
        }
        py::dict d;
        d["label"] = s->label();
        d["form"] = mzv::series::form_tag_name(s->form_tag());
        d["pi_power"] = s->pi_power();
        d["rows"] = std::move(rows);
        return d;
      },
      py::arg("name"), py::arg("terms") = 8, py::arg("power") = std::nullopt,
      "Exact coefficients of a named stream ('arcsin-pow' takes a power).");

  m.def("registry_ids", [] {
    std::vector<std::string> ids;
    for (const auto& rec : mzv::identities::registry()) ids.push_back(rec.id);
    return ids;
  });

  m.def(
      "verify",
      [](const std::string& pattern, int digits) {
        auto ctx = make_ctx(digits);
        py::list out;
        for (const auto& r : mzv::identities::verify_all(ctx, pattern))
          out.append(result_dict(r, digits));
        return out;
      },
      py::arg("pattern") = "", py::arg("digits") = 30,
      "Verify all records matching the glob pattern (empty = all).");

  m.def(
      "verify_one",
      [](const std::string& id, int digits) {
        auto ctx = make_ctx(digits);
        return result_dict(mzv::identities::verify(id, ctx), digits);
      },
      py::arg("id"), py::arg("digits") = 30);

  m.def(
      "duality_check",
      [](long max_weight, int digits) {
        auto ctx = make_ctx(digits);
        py::list out;
        for (const auto& r : mzv::identities::duality_check(max_weight, ctx))
          out.append(result_dict(r, digits));
        return out;
      },
      py::arg("max_weight") = 6, py::arg("digits") = 15,
      "Sweep the duality involution over all admissible indices.");

  m.def(
      "report_json",
      [](const std::string& pattern, int digits) {
        auto ctx = make_ctx(digits);
        auto t0 = std::chrono::steady_clock::now();
        auto results = mzv::identities::verify_all(ctx, pattern);
        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return mzv::report::to_json(mzv::report::make_report(results, ctx, wall));
      },
      py::arg("pattern") = "", py::arg("digits") = 30,
      "Run verification and return the JSON report as a string.");

  m.def("glob_match", &mzv::identities::glob_match, py::arg("pattern"), py::arg("text"));
}
