"""Orbit system -> finite polynomially-parametrised program.

With ``n = |T|`` atoms in the support, every row orbit ``A^(p)`` splits into
one class per subset ``I`` of positions filled from ``T`` (a
:class:`RowPattern`), and every column orbit ``A^(l)`` contributes one unknown:
its (symmetric) value on ``T^(l)``. For injection ``iota`` with
``dom(iota) <= I`` the number of columns of ``T^(l)`` in that relative
position to a row representative is ``(n - |I|)^(l - |dom iota|)``; other
injections contribute nothing. The second step rescales each unknown to the
orbit sum so that the system becomes monotone in ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .numerics import ZERO, Polynomial, falling_factorial
from .orbit_model import OrbitSystem, atom_dimension
from .paramlp import ParamIneq, ParamSystem


@dataclass(frozen=True)
class RowPattern:
    row: int
    fixed: tuple[int, ...]  # 1-based positions filled from T

    def text(self) -> str:
        return f"row {self.row + 1}, I = {{{','.join(map(str, self.fixed))}}}"


@dataclass(frozen=True)
class ReducedProgram:
    system: ParamSystem
    objective: tuple[int, ...]
    dim_d: int
    patterns: tuple[RowPattern, ...]  # label of each inequality, same order

    @property
    def n_floor(self) -> int:
        return 2 * self.dim_d


def enumerate_row_patterns(sys: OrbitSystem) -> list[RowPattern]:
    out = []
    for i, r in enumerate(sys.rows):
        for mask in range(1 << r.dim):
            out.append(RowPattern(i, tuple(x + 1 for x in range(r.dim) if mask >> x & 1)))
    return out


def pattern_coefficient(sys: OrbitSystem, pattern: RowPattern, j: int) -> Polynomial:
    fixed = set(pattern.fixed)
    ell = sys.cols[j].dim
    acc = ZERO
    for inj, v in sys.block(pattern.row, j):
        dom = inj.domain
        if set(dom) <= fixed:
            acc = acc + falling_factorial(ell - len(dom), len(fixed)) * v
    return acc


def _require_canonical(sys: OrbitSystem) -> None:
    if not sys.is_canonical():
        raise ValueError("reduction needs a canonical system (GEQ rows, FREE columns); canonicalize first")


def _p1(sys: OrbitSystem, keep_trivial: bool = False) -> tuple[list[RowPattern], list[ParamIneq]]:
    _require_canonical(sys)
    labels, ineqs = [], []
    for pat in enumerate_row_patterns(sys):
        e = ParamIneq(
            tuple(pattern_coefficient(sys, pat, j) for j in range(len(sys.cols))),
            Polynomial.const(sys.rows[pat.row].target),
        )
        if keep_trivial or not e.is_trivial():
            labels.append(pat)
            ineqs.append(e)
    return labels, ineqs


def build_p1(sys: OrbitSystem, keep_trivial: bool = False) -> ParamSystem:
    """Unknown ``j`` is the common value of the columns ``T^(l_j)``.

    Patterns whose inequality reads ``0 >= 0`` are dropped unless ``keep_trivial``.
    """
    _, ineqs = _p1(sys, keep_trivial)
    return ParamSystem(len(sys.cols), tuple(ineqs))


def build_p2(sys: OrbitSystem) -> ReducedProgram:
    """Unknown ``j`` is the orbit sum over ``T^(l_j)``; monotone for ``n >= d``."""
    labels, ineqs = _p1(sys)
    d = atom_dimension(sys)
    col_scale = [falling_factorial(d - c.dim, c.dim) for c in sys.cols]
    rhs_scale = falling_factorial(d, 0)
    scaled = tuple(
        ParamIneq(tuple(p * s for p, s in zip(e.lhs, col_scale)), e.rhs * rhs_scale) for e in ineqs
    )
    return ReducedProgram(ParamSystem(len(sys.cols), scaled), sys.objective(), d, tuple(labels))


def format_reduced(rp: ReducedProgram, labels: bool = False) -> str:
    lines = [f"# unknowns: {rp.system.unknowns} (orbit sums), atom dimension d = {rp.dim_d}, valid for n >= {rp.n_floor}"]
    for pat, e in zip(rp.patterns, rp.system.inequalities):
        lines.append(e.format() + (f"    # {pat.text()}" if labels else ""))
    terms = " + ".join(f"{a}·x{j + 1}" for j, a in enumerate(rp.objective) if a) or "0"
    lines.append(f"objective: {terms}")
    return "\n".join(lines) + "\n"
