"""Brute-force expansion of an orbit system over the atoms ``{1..n}``.

Columns are all non-repeating tuples over ``{1..n}``. Rows are one
representative per orbit of permutations fixing ``{1..n}`` pointwise: the
positions in ``I`` get a non-repeating tuple over ``{1..n}``, the remaining
positions get fresh atoms ``n+1, n+2, ...`` from left to right. The resulting
finite LP is solvable iff the orbit system has a finitary solution supported
by ``{1..n}``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numerics import format_rational
from .orbit_model import MaxResult, OrbitSystem
from .reduction import enumerate_row_patterns
from .simplex import FiniteLP, Status, maximize

MAX_SYMMETRIZE_ATOMS = 6


@dataclass(frozen=True)
class FiniteInstance:
    lp: FiniteLP
    column_labels: tuple[tuple[int, tuple[int, ...]], ...]
    row_labels: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]  # (orbit, I, representative)
    atom_count: int
    objective: tuple[Fraction, ...]


def _injection(row: tuple[int, ...], col: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(col.index(a) + 1 if a in col else 0 for a in row)


def instantiate_finite(sys: OrbitSystem, n: int) -> FiniteInstance:
    if n < 0:
        raise ValueError("atom count must be nonnegative")
    atoms = range(1, n + 1)
    cols: list[tuple[int, tuple[int, ...]]] = []
    for j, c in enumerate(sys.cols):
        cols.extend((j, t) for t in itertools.permutations(atoms, c.dim))
    blocks = {}
    for (i, j, inj), v in sys.coefficients.items():
        blocks.setdefault((i, j), {})[inj.mapping] = v

    rows, labels = [], []
    for pat in enumerate_row_patterns(sys):
        i, fixed = pat.row, pat.fixed
        p = sys.rows[i].dim
        for filled in itertools.permutations(atoms, len(fixed)):
            rep, fresh, it = [], n + 1, iter(filled)
            for x in range(1, p + 1):
                if x in fixed:
                    rep.append(next(it))
                else:
                    rep.append(fresh)
                    fresh += 1
            rep_t = tuple(rep)
            coeffs = []
            for j, t in cols:
                block = blocks.get((i, j))
                coeffs.append(Fraction(block.get(_injection(rep_t, t), 0)) if block else Fraction(0))
            rows.append((tuple(coeffs), Fraction(sys.rows[i].target)))
            labels.append((i, fixed, rep_t))
    objective = tuple(Fraction(sys.cols[j].objective) for j, _ in cols)
    return FiniteInstance(FiniteLP(len(cols), tuple(rows)), tuple(cols), tuple(labels), n, objective)


def oracle_supremum(sys: OrbitSystem, n: int) -> MaxResult:
    """Supremum of the objective over finitary solutions supported by ``{1..n}``."""
    inst = instantiate_finite(sys, n)
    res = maximize(inst.lp, inst.objective)
    if res.tag is Status.INFEASIBLE:
        return MaxResult.neg_inf()
    if res.tag is Status.UNBOUNDED:
        return MaxResult.pos_inf()
    return MaxResult.finite(res.value, True)


def orbit_sums(inst: FiniteInstance, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n_orbits = 1 + max((j for j, _ in inst.column_labels), default=-1)
    sums = [Fraction(0)] * n_orbits
    for (j, _), v in zip(inst.column_labels, x):
        sums[j] += v
    return tuple(sums)


def symmetrize(inst: FiniteInstance, x: Sequence[Fraction], atoms: Sequence[int] | None = None) -> tuple[Fraction, ...]:
    """Average of ``x`` over all permutations of ``atoms`` (default: all of ``{1..n}``)."""
    atoms = tuple(range(1, inst.atom_count + 1)) if atoms is None else tuple(atoms)
    if len(atoms) > MAX_SYMMETRIZE_ATOMS:
        raise ValueError(f"symmetrize enumerates |atoms|! permutations; refusing {len(atoms)} > {MAX_SYMMETRIZE_ATOMS}")
    index = {label: k for k, label in enumerate(inst.column_labels)}
    total = [Fraction(0)] * len(x)
    for perm in itertools.permutations(atoms):
        rho = dict(zip(atoms, perm))
        for k, (j, t) in enumerate(inst.column_labels):
            total[index[(j, tuple(rho.get(a, a) for a in t))]] += x[k]
    count = math.factorial(len(atoms))
    return tuple(v / count for v in total)


def _label(label: tuple[int, tuple[int, ...]]) -> str:
    j, t = label
    return f"x{j + 1}[{','.join(map(str, t))}]"


def _signed_sum(pairs) -> str:
    out = ""
    for c, name in pairs:
        if c == 0:
            continue
        body = name if abs(c) == 1 else f"{format_rational(abs(c))}·{name}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def format_instance(inst: FiniteInstance) -> str:
    names = [_label(lab) for lab in inst.column_labels]
    lines = [f"# atoms: {inst.atom_count}; columns: {len(names)}; rows: {len(inst.row_labels)}"]
    for (coeffs, rhs), (i, _, rep) in zip(inst.lp.geq, inst.row_labels):
        lines.append(f"row{i + 1}[{','.join(map(str, rep))}]: {_signed_sum(zip(coeffs, names))} >= {format_rational(rhs)}")
    lines.append("maximize: " + _signed_sum(zip(inst.objective, names)))
    return "\n".join(lines) + "\n"
