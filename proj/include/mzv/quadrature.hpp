#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mzv/core.hpp"

namespace mzv::quadrature {

struct QuadratureResult {
  Real value;
  Real error_estimate;
  int levels_used = 0;
};

using Integrand = std::function<Real(const Real&)>;

// Tanh-sinh (double-exponential) integration of f over (a, b).  The
// integrand is only ever sampled strictly inside the interval, with the
// offset from the nearer endpoint supplied at full working precision, so
// integrable log or inverse-square-root endpoint singularities are fine.
// Levels are doubled until two successive refinements agree to
// 10^-(digits+2) relative, or ctx.quad_max_level is reached (then an
// EvaluationError is raised if the estimate is still above tolerance).
QuadratureResult tanh_sinh(const Integrand& f, const Real& a, const Real& b,
                           const PrecisionContext& ctx);

// variant used by the catalog: f receives (x, d) where d = min(x-a, b-x)
// computed without cancellation; integrands with endpoint-sensitive factors
// use d directly
using EndpointIntegrand = std::function<Real(const Real&, const Real&)>;
QuadratureResult tanh_sinh_ep(const EndpointIntegrand& f, const Real& a, const Real& b,
                              const PrecisionContext& ctx);

struct IntegrandSpec {
  std::string id;
  int n_params = 0;  // how many integer parameters the id takes
  std::string description;
  std::string substitution;  // "NONE" or "X_EQ_SIN_Y"
  std::string endpoint_notes;
};

// all registered integrands, sorted by id
std::vector<IntegrandSpec> catalog();

// Evaluate a catalog integral (after its registered substitution, with any
// rational-times-pi-power prefactor folded into the result).
QuadratureResult integral_by_id(const std::string& id, const std::vector<long>& params,
                                const PrecisionContext& ctx);

// -n * integral_0^{pi/2} y^(n-1) log(sin y) dy, the log-sine form of the
// arcsin-power integral over x
QuadratureResult log_sine_check(long n, const PrecisionContext& ctx);

// drop cached abscissa/weight tables (tests use this to exercise rebuilds)
void clear_node_cache();

}  // namespace mzv::quadrature
