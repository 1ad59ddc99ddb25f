"""Partitioned linearly implicit (Rosenbrock-type) time integration toolkit.

Thin convenience layer over the compiled module: JSON-string results from the
order-condition checker are parsed into dictionaries here.
"""

import json as _json

try:
    from . import _gark as _core
except ImportError:  # development builds put the extension on sys.path directly
    import _gark as _core

GarkError = _core.GarkError

builtin_names = _core.builtin_names
row324_gamma = _core.row324_gamma
validate = _core.validate
is_stiffly_accurate = _core.is_stiffly_accurate
is_internally_consistent = _core.is_internally_consistent
stability_value = _core.stability_value
stability_at_stiff_limit = _core.stability_at_stiff_limit
dahlquist_step = _core.dahlquist_step
integrate_final = _core.integrate_final
converge = _core.converge
zla_initial_state = _core.zla_initial_state


def tableau(method):
    """Tableau of a built-in method as a dictionary (JSON schema layout)."""
    return _json.loads(_core.tableau_json(method))


def check(method, order=0, cls="", dae=False, imex=False, tol=1e-10):
    """Order-condition report: dict with conditions, max_residual and pass."""
    rep = _json.loads(_core.check(method, order, cls, dae, imex))
    rep["pass"] = rep["max_residual"] <= tol
    return rep


__all__ = [
    "GarkError",
    "builtin_names",
    "row324_gamma",
    "validate",
    "is_stiffly_accurate",
    "is_internally_consistent",
    "stability_value",
    "stability_at_stiff_limit",
    "dahlquist_step",
    "integrate_final",
    "converge",
    "zla_initial_state",
    "tableau",
    "check",
]
