"""Exact rational LP kernel over free variables.

A :class:`FiniteLP` holds ``>=`` rows and ``=`` rows over ``num_vars`` free
real unknowns. Free variables are first pivoted into the basis by Gauss-Jordan steps;
the rows left over only mention slacks and go through a sparse two-phase
tableau simplex with Bland's rule, on ``gmpy2.mpq`` internally and :class:`~fractions.Fraction`
at the boundary. Every witness is re-checked by substitution before it is
returned.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

from .numerics import as_rational

Row = tuple[tuple[Fraction, ...], Fraction]


def make_row(coeffs: Sequence, rhs) -> Row:
    return tuple(as_rational(c) for c in coeffs), as_rational(rhs)


@dataclass(frozen=True)
class FiniteLP:
    num_vars: int
    geq: tuple[Row, ...] = ()
    eq: tuple[Row, ...] = ()

    def __post_init__(self):
        geq = tuple(make_row(c, b) for c, b in self.geq)
        eq = tuple(make_row(c, b) for c, b in self.eq)
        for coeffs, _ in geq + eq:
            if len(coeffs) != self.num_vars:
                raise ValueError(f"row of length {len(coeffs)} in an LP over {self.num_vars} variables")
        object.__setattr__(self, "geq", geq)
        object.__setattr__(self, "eq", eq)

    def without_geq(self, index: int) -> "FiniteLP":
        return FiniteLP(self.num_vars, self.geq[:index] + self.geq[index + 1:], self.eq)

    def with_geq(self, *rows: Row) -> "FiniteLP":
        return FiniteLP(self.num_vars, self.geq + tuple(rows), self.eq)

    def violations(self, x: Sequence[Fraction]) -> list[str]:
        out = []
        for r, (coeffs, rhs) in enumerate(self.geq):
            if _dot(coeffs, x) < rhs:
                out.append(f"geq[{r}]")
        for r, (coeffs, rhs) in enumerate(self.eq):
            if _dot(coeffs, x) != rhs:
                out.append(f"eq[{r}]")
        return out

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        return not self.violations(x)


class Status(enum.Enum):
    INFEASIBLE = "infeasible"
    FEASIBLE = "feasible"
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPOutcome:
    tag: Status
    witness: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _dot(a, x):
    return sum((ai * xi for ai, xi in zip(a, x) if ai), Fraction(0))


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass
class _Tableau:
    """Equality-form tableau ``A z = b, z >= 0, b >= 0`` with sparse rows."""

    rows: list[dict[int, mpq]]
    rhs: list[mpq]
    basis: list[int]
    ncols: int
    artificial_from: int
    pivots: int = field(default=0)

    def pivot(self, r: int, col: int, obj: dict[int, mpq] | None, obj_val: list) -> None:
        prow = self.rows[r]
        a = prow[col]
        if a != 1:
            inv = 1 / a
            for c in prow:
                prow[c] *= inv
            self.rhs[r] *= inv
        prow[col] = mpq(1)
        pr = self.rhs[r]
        items = list(prow.items())
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(col)
            if not f:
                continue
            for c, v in items:
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            self.rhs[i] -= f * pr
        if obj is not None:
            f = obj.get(col)
            if f:
                for c, v in items:
                    nv = obj.get(c, 0) - f * v
                    if nv:
                        obj[c] = nv
                    else:
                        obj.pop(c, None)
                obj_val[0] -= f * pr
        self.basis[r] = col
        self.pivots += 1

    def run(self, obj: dict[int, mpq], obj_val: list, allowed: int) -> bool:
        """Minimise with Bland's rule over columns ``< allowed``; False if unbounded."""
        while True:
            entering = None
            for c in sorted(obj):
                if c < allowed and obj[c] < 0:
                    entering = c
                    break
            if entering is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row.get(entering)
                if a is not None and a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], entering, obj, obj_val)

    def values(self) -> list[mpq]:
        z = [mpq(0)] * self.ncols
        for i, b in enumerate(self.basis):
            z[b] = self.rhs[i]
        return z


@dataclass
class _Reduced:
    """``lp`` after pivoting free variables into the basis.

    ``defining[j]`` expresses basic free variable ``j`` as
    ``x_j = rhs - sum(row[c] * z_c)`` over nonbasic columns; the remaining
    (residual) rows mention slack columns only. Columns: free variable ``j`` is
    ``j``, the slack of ``>=`` row ``r`` is ``k + r``.
    """

    k: int
    defining: dict[int, tuple[dict[int, mpq], mpq]]
    residual: list[tuple[dict[int, mpq], mpq, int | None]]  # (row, rhs, own slack column)


def _row_sub(row: dict[int, mpq], f: mpq, other: dict[int, mpq]) -> None:
    for c, v in other.items():
        nv = row.get(c, 0) - f * v
        if nv:
            row[c] = nv
        else:
            row.pop(c, None)


def _eliminate_free(lp: FiniteLP) -> _Reduced | None:
    """Gauss-Jordan on free columns, one row at a time; None if some row reads ``0 = b != 0``."""
    k = lp.num_vars
    n_geq = len(lp.geq)
    defining: dict[int, tuple[dict[int, mpq], mpq]] = {}
    residual = []
    for r, (coeffs, b) in enumerate(list(lp.geq) + list(lp.eq)):
        row = {j: mpq(c.numerator, c.denominator) for j, c in enumerate(coeffs) if c}
        own = None
        if r < n_geq:
            own = k + r
            row[own] = mpq(-1)
        rhs = mpq(b.numerator, b.denominator)
        for j, (drow, drhs) in defining.items():
            f = row.get(j)
            if f:
                _row_sub(row, f, drow)
                rhs -= f * drhs
        piv = min((c for c in row if c < k), default=None)
        if piv is None:
            if row:
                residual.append((row, rhs, own))
            elif rhs != 0:
                return None
            continue
        inv = 1 / row[piv]
        row = {c: v * inv for c, v in row.items()}
        rhs *= inv
        for j, (drow, drhs) in list(defining.items()):
            f = drow.get(piv)
            if f:
                _row_sub(drow, f, row)
                defining[j] = (drow, drhs - f * rhs)
        defining[piv] = (row, rhs)
    return _Reduced(k, defining, residual)


def _phase_one(red: _Reduced, n_cols: int) -> _Tableau | None:
    """Feasible basis for the residual rows over slack columns, or None if infeasible."""
    art0 = n_cols
    rows: list[dict[int, mpq]] = []
    rhs: list[mpq] = []
    basis: list[int] = []
    art = art0
    for row, b, own in red.residual:
        row = dict(row)
        if b < 0 or (b == 0 and own is not None and row.get(own) == -1):
            row = {c: -v for c, v in row.items()}
            b = -b
        if own is not None and row.get(own) == 1:
            basis.append(own)
        else:
            row[art] = mpq(1)
            basis.append(art)
            art += 1
        rows.append(row)
        rhs.append(b)
    t = _Tableau(rows, rhs, basis, art, art0)
    # phase-one objective: minimise the sum of artificials, in reduced form
    obj: dict[int, mpq] = {}
    obj_val = [mpq(0)]
    for i, b in enumerate(basis):
        if b >= art0:
            for c, v in rows[i].items():
                if c < art0:
                    obj[c] = obj.get(c, 0) - v
            obj_val[0] -= rhs[i]
    obj = {c: v for c, v in obj.items() if v}
    t.run(obj, obj_val, art0)
    if obj_val[0] != 0:
        return None
    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(t.rows):
        if t.basis[i] >= art0:
            col = next((c for c in sorted(t.rows[i]) if c < art0), None)
            if col is None:
                del t.rows[i], t.rhs[i], t.basis[i]
                continue
            t.pivot(i, col, None, obj_val)
        i += 1
    for row in t.rows:
        for c in [c for c in row if c >= art0]:
            del row[c]
    t.ncols = art0
    return t


def _solve_start(lp: FiniteLP) -> tuple[_Reduced, _Tableau] | None:
    red = _eliminate_free(lp)
    if red is None:
        return None
    t = _phase_one(red, lp.num_vars + len(lp.geq))
    return None if t is None else (red, t)


def _extract(red: _Reduced, t: _Tableau) -> tuple[Fraction, ...]:
    z = {b: v for b, v in zip(t.basis, t.rhs)}
    x = [mpq(0)] * red.k
    for j, (drow, drhs) in red.defining.items():
        x[j] = drhs - sum((v * z[c] for c, v in drow.items() if c != j and c in z), mpq(0))
    return tuple(_to_fraction(v) for v in x)


def _checked(lp: FiniteLP, x: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    bad = lp.violations(x)
    if bad:
        raise AssertionError(f"simplex produced a non-solution, violated {bad}")
    return x


def feasible(lp: FiniteLP) -> LPOutcome:
    start = _solve_start(lp)
    if start is None:
        return LPOutcome(Status.INFEASIBLE)
    return LPOutcome(Status.FEASIBLE, _checked(lp, _extract(*start)))


def maximize(lp: FiniteLP, objective: Sequence) -> LPOutcome:
    objective = [as_rational(c) for c in objective]
    if len(objective) != lp.num_vars:
        raise ValueError("objective length differs from num_vars")
    start = _solve_start(lp)
    if start is None:
        return LPOutcome(Status.INFEASIBLE)
    red, t = start
    # objective in terms of nonbasic columns: const + sum g[c] z_c
    c_free = {j: mpq(c.numerator, c.denominator) for j, c in enumerate(objective) if c}
    g: dict[int, mpq] = {j: v for j, v in c_free.items() if j not in red.defining}
    const = mpq(0)
    for j, (drow, drhs) in red.defining.items():
        cj = c_free.get(j)
        if cj:
            const += cj * drhs
            for c, v in drow.items():
                if c != j:
                    g[c] = g.get(c, 0) - cj * v
    if any(v and c < red.k for c, v in g.items()):
        # a nonbasic free variable moves the objective and only basic free variables
        return LPOutcome(Status.UNBOUNDED)
    cost = {c: -v for c, v in g.items() if v}
    obj = dict(cost)
    obj_val = [const]
    for i, b in enumerate(t.basis):
        cb = cost.get(b)
        if cb:
            for c, v in t.rows[i].items():
                obj[c] = obj.get(c, 0) - cb * v
            obj_val[0] -= cb * t.rhs[i]
    obj = {c: v for c, v in obj.items() if v}
    if not t.run(obj, obj_val, t.ncols):
        return LPOutcome(Status.UNBOUNDED)
    x = _checked(lp, _extract(red, t))
    value = _dot(objective, x)
    if value != _to_fraction(obj_val[0]):
        raise AssertionError("objective value disagrees with the tableau")
    return LPOutcome(Status.OPTIMAL, x, value)


def strict_witness(lp: FiniteLP, strict_index: int, known_feasible: bool = False) -> tuple[Fraction, ...] | None:
    """A point of ``lp`` where row ``strict_index`` holds strictly, or None.

    Maximises the row's left-hand side over the other rows and compares the
    supremum against the row's bound.
    """
    if not 0 <= strict_index < len(lp.geq):
        raise IndexError(f"strict_index {strict_index} out of range")
    coeffs, b = lp.geq[strict_index]
    rest = lp.without_geq(strict_index)
    if not known_feasible and feasible(lp).tag is Status.INFEASIBLE:
        return None
    res = maximize(rest, coeffs)
    if res.tag is Status.UNBOUNDED:
        # any point of the ray region past b will do
        pushed = feasible(rest.with_geq((coeffs, b + 1)))
        return pushed.witness
    assert res.tag is Status.OPTIMAL
    return res.witness if res.value > b else None


def strict_feasible(lp: FiniteLP, strict_index: int) -> bool:
    """Is ``lp`` solvable with ``geq[strict_index]`` strengthened to ``>``?"""
    return strict_witness(lp, strict_index) is not None
