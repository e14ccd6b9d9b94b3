"""Conversions between problem forms, at the level of orbits.

All three constructions act block by block on row and column orbits, so
they commute with finite instantiation.
"""
from __future__ import annotations

from .orbit_model import (
    ColOrbit,
    OrbitSystem,
    PartialInjection,
    RowOrbit,
    Sense,
    Sign,
    canonicalize,
)


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise ValueError(f"precondition violated: {what}")


def nonneg_eq_to_ineq(sys: OrbitSystem) -> OrbitSystem:
    """``A x = t, x >= 0`` as ``A x >= t, -A x >= -t, x >= 0`` over free columns."""
    _require(all(r.sense is Sense.EQ for r in sys.rows), "all row orbits must be EQ")
    _require(all(c.sign is Sign.NONNEG for c in sys.cols), "all column orbits must be NONNEG")
    return canonicalize(sys)


def ineq_to_nonneg_eq(sys: OrbitSystem) -> OrbitSystem:
    """``A x >= t`` as ``[A | -A | -Id] (x+, x-, y) = t`` over nonnegative columns.

    Columns are the original orbits, a negated copy of them, then one slack
    orbit per row orbit; the objective becomes ``[s | -s | 0]``.
    """
    _require(sys.is_canonical(), "system must be all GEQ rows over FREE columns")
    r = len(sys.cols)
    cols = (
        [ColOrbit(c.dim, Sign.NONNEG, c.objective) for c in sys.cols]
        + [ColOrbit(c.dim, Sign.NONNEG, -c.objective) for c in sys.cols]
        + [ColOrbit(row.dim, Sign.NONNEG, 0) for row in sys.rows]
    )
    rows = [RowOrbit(row.dim, Sense.EQ, row.target) for row in sys.rows]
    coefs = {}
    for (i, j, inj), v in sys.coefficients.items():
        coefs[(i, j, inj)] = v
        coefs[(i, r + j, inj)] = -v
    for i, row in enumerate(sys.rows):
        coefs[(i, 2 * r + i, PartialInjection.identity(row.dim))] = -1
    return OrbitSystem(tuple(rows), tuple(cols), coefs)


def fin_to_general(sys: OrbitSystem) -> OrbitSystem:
    """Append a dimension-0 column ``y`` and the row ``sum of all x - y >= 0``."""
    _require(sys.is_canonical(), "system must be all GEQ rows over FREE columns")
    i_new, y = len(sys.rows), len(sys.cols)
    coefs = dict(sys.coefficients)
    for j, c in enumerate(sys.cols):
        coefs[(i_new, j, PartialInjection.empty(0, c.dim))] = 1
    coefs[(i_new, y, PartialInjection.empty(0, 0))] = -1
    return OrbitSystem(sys.rows + (RowOrbit(0, Sense.GEQ, 0),), sys.cols + (ColOrbit(0),), coefs)
