"""Independent brute-force ground truth for tiny curves.

:mod:`.table` holds the reference arithmetic and imports nothing from the
arithmetic core.  :mod:`.checks` and :mod:`.views` pit the core against it.
"""

from __future__ import annotations

from ..errors import TooLarge
from .checks import CheckResult, verify_curve
from .table import (SCAN_BOUND, CurveParams, CyclicIndex, GroupTable, cyclic_index,
                    enumerate_group, naive_mul, small_dlog)
from .views import ViewReport, obliviousness_report

# the step-2 view sweeps cost about #E^3 additions
VIEW_LIMIT = 200


def verify(curve, kappa: int | None = None, seed: int = 0) -> list[CheckResult]:
    """Core-versus-oracle agreement on every checked property of ``curve``."""
    return verify_curve(curve, kappa, seed)


def view_report(curve, x: int | None = None) -> list[ViewReport]:
    """Step-2 view comparisons for the x-pair at ``x`` (first liftable x if None).

    These are statements about the protocol, not about arithmetic, and some
    of them are false; see the README.
    """
    table = enumerate_group(curve)
    if table.order > VIEW_LIMIT:
        raise TooLarge(f"#E = {table.order} is above the view limit {VIEW_LIMIT}")
    for cand in ([x] if x is not None else range(table.curve.p)):
        ys = table.sqrt(table.curve.rhs(cand))
        if len(ys) == 2:
            pair = ((cand, ys[0]), (cand, ys[1]))
            hi = (getattr(curve, "base_order", None) or table.point_order(pair[0])) - 1
            return obliviousness_report(table, pair, range(2, hi + 1))
    raise ValueError(f"no x-coordinate with two points on {curve}")


__all__ = ["SCAN_BOUND", "VIEW_LIMIT", "CheckResult", "CurveParams", "CyclicIndex", "GroupTable",
           "ViewReport", "cyclic_index", "enumerate_group", "naive_mul", "obliviousness_report",
           "small_dlog", "verify", "verify_curve", "view_report"]
