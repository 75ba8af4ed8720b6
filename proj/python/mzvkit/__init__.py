"""High-precision evaluation of nested zeta-like sums and their identities.

Everything lives in the compiled ``_core`` extension; this package just
re-exports it.  Values cross the boundary as decimal strings (full
precision) with ``*_float`` conveniences.
"""

from ._core import (
    DomainError,
    EvaluationError,
    __version__,
    closed_form,
    constant,
    dual,
    duality_check,
    eval_sum,
    glob_match,
    integral,
    integral_ids,
    registry_ids,
    report_json,
    series_coefficients,
    verify,
    verify_one,
)

__all__ = [
    "DomainError",
    "EvaluationError",
    "__version__",
    "closed_form",
    "constant",
    "dual",
    "duality_check",
    "eval_sum",
    "glob_match",
    "integral",
    "integral_ids",
    "registry_ids",
    "report_json",
    "series_coefficients",
    "verify",
    "verify_one",
]
