"""Polynomially-parametrised inequalities and their almost-all solutions.

An inequality ``p_1(n) x_1 + ... + p_k(n) x_k >= q(n)`` has a *head* (the
coefficients of its top monomial ``n^d`` read as an ordinary inequality) and a
*tail* (everything below ``n^d``). :func:`almost_all_solve` decides whether a
single vector solves ``P(n)`` for all large ``n`` by repeatedly testing the
head system, and replacing a degenerate inequality by its tail while moving
its head into a set of equalities.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .numerics import (
    ONE,
    ZERO,
    Polynomial,
    as_rational,
    format_polynomial,
    format_rational,
    integer_scaled,
    rational_poly_bound,
)
from .orbit_model import MaxResult
from .simplex import FiniteLP, Row, Status, feasible, maximize, strict_witness


@dataclass(frozen=True)
class ParamIneq:
    lhs: tuple[Polynomial, ...]
    rhs: Polynomial = ZERO

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))

    @classmethod
    def constant(cls, coeffs: Sequence[int], rhs: int) -> "ParamIneq":
        return cls(tuple(Polynomial.const(c) for c in coeffs), Polynomial.const(rhs))

    def is_trivial(self) -> bool:
        return self.rhs.is_zero() and all(p.is_zero() for p in self.lhs)

    @property
    def degree(self) -> int:
        return max([p.degree for p in self.lhs] + [self.rhs.degree])

    @property
    def size(self) -> int:
        return sum(p.monomial_count() for p in self.lhs) + self.rhs.monomial_count()

    def evaluate(self, n: int) -> Row:
        return tuple(Fraction(p(n)) for p in self.lhs), Fraction(self.rhs(n))

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_param_ineq(self, names)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class ParamSystem:
    unknowns: int
    inequalities: tuple[ParamIneq, ...] = ()
    gamma: tuple[Row, ...] = ()

    def __post_init__(self):
        ineqs = tuple(self.inequalities)
        for e in ineqs:
            if len(e.lhs) != self.unknowns:
                raise ValueError(f"inequality over {len(e.lhs)} unknowns in a system over {self.unknowns}")
        object.__setattr__(self, "inequalities", ineqs)
        object.__setattr__(self, "gamma", tuple((tuple(map(as_rational, c)), as_rational(b)) for c, b in self.gamma))

    @property
    def size(self) -> int:
        return sum(e.size for e in self.inequalities)

    def normalized(self) -> "ParamSystem":
        return ParamSystem(self.unknowns, tuple(e for e in self.inequalities if not e.is_trivial()), self.gamma)

    def format(self, names: Sequence[str] | None = None) -> str:
        lines = [e.format(names) for e in self.inequalities]
        lines += [format_linear(c, names) + " = " + format_rational(b) for c, b in self.gamma]
        return "\n".join(lines)


# ---------------------------------------------------------------- head and tail


def head(e: ParamIneq) -> Row:
    d = e.degree
    return tuple(Fraction(p.coeff(d)) for p in e.lhs), Fraction(e.rhs.coeff(d))


def tail(e: ParamIneq) -> ParamIneq | None:
    """The inequality without its top monomial; None when that leaves ``0 >= 0``."""
    d = e.degree
    t = ParamIneq(tuple(p.drop_degree(d) for p in e.lhs), e.rhs.drop_degree(d))
    return None if t.is_trivial() else t


def evaluate_at(p: ParamSystem, n: int) -> FiniteLP:
    return FiniteLP(p.unknowns, tuple(e.evaluate(n) for e in p.inequalities), p.gamma)


def head_lp(p: ParamSystem) -> FiniteLP:
    return FiniteLP(p.unknowns, tuple(head(e) for e in p.inequalities), p.gamma)


# ---------------------------------------------------------------- the iteration


class Verdict(enum.Enum):
    SOLVABLE = "SOLVABLE"
    UNSOLVABLE = "UNSOLVABLE"


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    system: ParamSystem  # state examined in this iteration
    outcome: str  # "unsolvable", "solvable" or "degenerate"
    chosen_index: int | None = None
    chosen: ParamIneq | None = None
    size_after: int | None = None

    def describe(self, names: Sequence[str] | None = None) -> str:
        before = self.system.size
        g = len(self.system.gamma)
        if self.outcome == "degenerate":
            return (
                f"iteration {self.iteration}: degenerate #{self.chosen_index + 1} {self.chosen.format(names)}; "
                f"|P| {before} -> {self.size_after}; |Gamma| {g} -> {g + 1}"
            )
        return f"iteration {self.iteration}: {self.outcome}; |P| {before}; |Gamma| {g}"


@dataclass(frozen=True)
class AlmostAllVerdict:
    tag: Verdict
    witness: tuple[Fraction, ...] | None = None
    trace: tuple[IterationRecord, ...] = field(default=())
    final: ParamSystem | None = None

    @property
    def solvable(self) -> bool:
        return self.tag is Verdict.SOLVABLE


def _strictly_solves(p: ParamSystem, x: Sequence[Fraction]) -> bool:
    for e in p.inequalities:
        a, b = head(e)
        if sum(ai * xi for ai, xi in zip(a, x)) <= b:
            return False
    return all(sum(ai * xi for ai, xi in zip(a, x)) == b for a, b in p.gamma)


def almost_all_solve(p: ParamSystem) -> AlmostAllVerdict:
    """Decide whether some vector solves ``p(n)`` for all sufficiently large ``n``."""
    p = p.normalized()
    ineqs = list(p.inequalities)
    gamma = list(p.gamma)
    trace: list[IterationRecord] = []
    it = 0
    while True:
        it += 1
        state = ParamSystem(p.unknowns, tuple(ineqs), tuple(gamma))
        q = head_lp(state)
        base = feasible(q)
        if base.tag is Status.INFEASIBLE:
            trace.append(IterationRecord(it, state, "unsolvable"))
            return AlmostAllVerdict(Verdict.UNSOLVABLE, None, tuple(trace), state)
        witnesses = []
        chosen = None
        for idx in range(len(ineqs)):
            w = strict_witness(q, idx, known_feasible=True)
            if w is None:
                chosen = idx
                break
            witnesses.append(w)
        if chosen is None:
            if witnesses:
                m = len(witnesses)
                x = tuple(sum(ws[j] for ws in witnesses) / m for j in range(p.unknowns))
            else:
                x = base.witness
            # convex combination of the per-inequality points is strict everywhere
            assert _strictly_solves(state, x), "averaged witness is not strict"
            trace.append(IterationRecord(it, state, "solvable"))
            return AlmostAllVerdict(Verdict.SOLVABLE, x, tuple(trace), state)
        e = ineqs[chosen]
        t = tail(e)
        ineqs[chosen:chosen + 1] = [t] if t is not None else []
        gamma.append(head(e))
        trace.append(
            IterationRecord(it, state, "degenerate", chosen, e, sum(x.size for x in ineqs))
        )


def almost_all_maximize(p: ParamSystem, objective: Sequence) -> MaxResult:
    """Supremum of ``objective`` over the almost-all-solutions of ``p``."""
    objective = [as_rational(c) for c in objective]
    v = almost_all_solve(p)
    if not v.solvable:
        return MaxResult.neg_inf()
    res = maximize(head_lp(v.final), objective)
    if res.tag is Status.UNBOUNDED:
        return MaxResult.pos_inf()
    assert res.tag is Status.OPTIMAL
    return MaxResult.finite(res.value, attained(p, objective, res.value))


def with_objective_fixed(p: ParamSystem, objective: Sequence, value) -> ParamSystem:
    """``p`` plus the two constant inequalities pinning ``objective . x`` to ``value``."""
    scale, ints = integer_scaled([as_rational(c) for c in objective] + [as_rational(value)])
    coeffs, rhs = ints[:-1], ints[-1]
    extra = [ParamIneq.constant(coeffs, rhs), ParamIneq.constant([-c for c in coeffs], -rhs)]
    return ParamSystem(p.unknowns, p.inequalities + tuple(extra), p.gamma).normalized()


def attained(p: ParamSystem, objective: Sequence, value) -> bool:
    return almost_all_solve(with_objective_fixed(p, objective, value)).solvable


def attaining_witness(p: ParamSystem, objective: Sequence, value) -> tuple[Fraction, ...] | None:
    return almost_all_solve(with_objective_fixed(p, objective, value)).witness


# ---------------------------------------------------------------- thresholds


def residual(e: ParamIneq, x: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of ``q(n) - sum_j p_j(n) x_j``; ``x`` solves ``e(n)`` iff it is ``<= 0``."""
    deg = e.degree
    out = [Fraction(e.rhs.coeff(i)) for i in range(deg + 1)]
    for pj, xj in zip(e.lhs, x):
        if xj:
            for i in range(deg + 1):
                out[i] -= pj.coeff(i) * xj
    return out


def is_almost_all_solution(p: ParamSystem, x: Sequence) -> bool:
    """Exact test: ``x`` satisfies the equalities and every residual is eventually ``<= 0``."""
    x = [as_rational(v) for v in x]
    for a, b in p.gamma:
        if sum(ai * xi for ai, xi in zip(a, x)) != b:
            return False
    for e in p.inequalities:
        r = residual(e, x)
        while r and r[-1] == 0:
            r.pop()
        if r and r[-1] > 0:
            return False
    return True


def valid_threshold(p: ParamSystem, x: Sequence) -> int:
    """An ``n0`` such that ``x`` solves ``p(n)`` for every integer ``n >= n0``."""
    x = [as_rational(v) for v in x]
    n0 = 1
    for e in p.inequalities:
        r = residual(e, x)
        bound = rational_poly_bound(r)
        if bound is None:
            continue
        while r[-1] == 0:
            r.pop()
        if r[-1] > 0:
            raise ValueError(f"{x} is not an almost-all-solution: {e} fails for large n")
        n0 = max(n0, bound)
    for n in (n0, n0 + 1):
        if not evaluate_at(p, n).satisfied_by(x):
            raise ValueError(f"{x} does not solve the system at n = {n}")
    return n0


# ---------------------------------------------------------------- text


def _names(k: int, names: Sequence[str] | None) -> list[str]:
    return list(names) if names is not None else [f"x{j + 1}" for j in range(k)]


def format_linear(coeffs: Sequence[Fraction], names: Sequence[str] | None = None) -> str:
    names = _names(len(coeffs), names)
    out = ""
    for c, name in zip(coeffs, names):
        c = as_rational(c)
        if c == 0:
            continue
        neg = c < 0
        a = abs(c)
        body = name if a == 1 else f"{format_rational(a)}{name}"
        out += ("-" if neg else "") + body if not out else (" - " if neg else " + ") + body
    return out or "0"


def format_param_ineq(e: ParamIneq, names: Sequence[str] | None = None) -> str:
    names = _names(len(e.lhs), names)
    out = ""
    for pj, name in zip(e.lhs, names):
        if pj.is_zero():
            continue
        neg = pj.leading < 0
        q = -pj if neg else pj
        if q == ONE:
            body = name
        elif q.monomial_count() == 1:
            body = f"{format_polynomial(q, compact=True)}·{name}"
        else:
            body = f"({format_polynomial(q, compact=True)})·{name}"
        out += ("-" if neg else "") + body if not out else (" - " if neg else " + ") + body
    return f"{out or '0'} >= {format_polynomial(e.rhs, compact=True)}"
