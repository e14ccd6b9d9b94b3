import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitlp.numerics import Polynomial, parse_polynomial
from orbitlp.orbit_model import MaxTag
from orbitlp.paramlp import (
    ParamIneq,
    ParamSystem,
    almost_all_maximize,
    almost_all_solve,
    attaining_witness,
    evaluate_at,
    head,
    is_almost_all_solution,
    tail,
    valid_threshold,
)


def ineq(*lhs, rhs="0"):
    return ParamIneq(tuple(parse_polynomial(p) for p in lhs), parse_polynomial(rhs))


P_SUM = ParamSystem(1, (ineq("n-1", rhs="n"), ineq("n", rhs="n")))
P_DEGEN = ParamSystem(3, (ineq("n^2", "-n^2", "n"), ineq("-n", "n+3", "0")))
P_FLOW = ParamSystem(2, (ineq("-n+1", "-n+1"), ineq("n^2-n", "0", rhs="n^2-n")))


def test_head_and_tail():
    e = ineq("n-1", rhs="n")
    assert head(e) == ((1,), 1)
    assert tail(e) == ineq("-1")
    assert tail(ineq("n", rhs="n")) is None
    assert head(ineq("2", "n", rhs="3")) == ((0, 1), 0)


def test_formatting():
    assert str(ineq("n-1", rhs="n")) == "(n-1)·x1 >= n"
    assert P_FLOW.inequalities[0].format() == "-(n-1)·x1 - (n-1)·x2 >= 0"
    assert P_FLOW.inequalities[1].format() == "(n^2-n)·x1 >= n^2-n"
    assert ineq("0", rhs="1").format(["x"]) == "0 >= 1"


def test_shared_head_solved_in_one_iteration():
    v = almost_all_solve(P_SUM)
    assert v.solvable and len(v.trace) == 1
    assert is_almost_all_solution(P_SUM, v.witness)


def test_two_degenerate_rounds_trace():
    v = almost_all_solve(P_DEGEN)
    names = ["x", "y", "z"]
    assert v.solvable
    assert [r.outcome for r in v.trace] == ["degenerate", "degenerate", "solvable"]
    assert [r.chosen_index for r in v.trace[:2]] == [0, 1]
    assert v.trace[1].system.format(names).splitlines() == ["n·z >= 0", "-n·x + (n+3)·y >= 0", "x - y = 0"]
    assert v.final.format(names).splitlines() == ["n·z >= 0", "3·y >= 0", "x - y = 0", "-x + y = 0"]
    assert is_almost_all_solution(P_DEGEN, v.witness)


def test_unsolvable():
    p = ParamSystem(1, (ineq("1", rhs="n"),))
    v = almost_all_solve(p)
    assert not v.solvable and v.witness is None
    assert almost_all_maximize(p, [1]).tag is MaxTag.NEG_INFINITY


def test_constant_zero_row_is_kept():
    p = ParamSystem(1, (ineq("0", rhs="1"),))
    assert not almost_all_solve(p).solvable


def test_empty_system():
    v = almost_all_solve(ParamSystem(2))
    assert v.solvable and v.witness == (0, 0)
    assert almost_all_maximize(ParamSystem(2), [0, 1]).tag is MaxTag.POS_INFINITY
    assert str(almost_all_maximize(ParamSystem(2), [0, 0])) == "sup = 0 (attained)"


def test_maximize_examples():
    assert str(almost_all_maximize(P_SUM, [-2])) == "sup = -2 (not attained)"
    assert str(almost_all_maximize(P_FLOW, [0, 3])) == "sup = -3 (attained)"
    assert attaining_witness(P_FLOW, [0, 3], -3) is not None
    assert attaining_witness(P_SUM, [-2], -2) is None


def test_valid_threshold_examples():
    assert valid_threshold(P_SUM, [2]) == 3
    assert valid_threshold(P_FLOW, [1, -1]) == 1
    with pytest.raises(ValueError):
        valid_threshold(P_SUM, [1])


small = st.integers(-3, 3)
polys = st.lists(small, max_size=3).map(lambda cs: Polynomial(tuple(cs)))


@st.composite
def param_systems(draw):
    k = draw(st.integers(1, 3))
    rows = draw(st.lists(st.tuples(st.tuples(*[polys] * k), polys), max_size=4))
    return ParamSystem(k, tuple(ParamIneq(lhs, rhs) for lhs, rhs in rows))


@st.composite
def planted(draw):
    """A system built around a known almost-all-solution ``x``."""
    k = draw(st.integers(1, 3))
    x = draw(st.tuples(*[st.fractions(-3, 3, max_denominator=3)] * k))
    den = 1
    for v in x:
        den *= v.denominator
    rows = []
    for _ in range(draw(st.integers(1, 4))):
        lhs = draw(st.tuples(*[polys] * k))
        slack = draw(polys)
        if not slack.is_zero() and slack.leading < 0:
            slack = -slack
        # den * (lhs . x) - slack has integer coefficients; the residual is -slack
        rhs = Polynomial()
        for q, v in zip(lhs, x):
            rhs = rhs + q * int(v * den)
        rows.append(ParamIneq(tuple(q * den for q in lhs), rhs - slack))
    return ParamSystem(k, tuple(rows)), x


@given(param_systems())
def test_witness_solves_from_threshold(p):
    v = almost_all_solve(p)
    if not v.solvable:
        return
    assert is_almost_all_solution(p, v.witness)
    n0 = valid_threshold(p, v.witness)
    for n in range(n0, n0 + 11):
        assert evaluate_at(p, n).satisfied_by(v.witness)


@given(planted())
def test_planted_solution_is_found(case):
    p, x = case
    assert is_almost_all_solution(p, x)
    assert almost_all_solve(p).solvable


@given(param_systems(), st.tuples(small, small, small))
def test_supremum_bounds_every_solution(p, objective):
    objective = objective[: p.unknowns]
    res = almost_all_maximize(p, objective)
    v = almost_all_solve(p)
    if not v.solvable:
        assert res.tag is MaxTag.NEG_INFINITY
        return
    value = sum(a * b for a, b in zip(objective, v.witness))
    if res.tag is MaxTag.FINITE:
        assert value <= res.value
        w = attaining_witness(p, objective, res.value)
        assert (w is not None) == res.attained
        if w is not None:
            assert is_almost_all_solution(p, w)
            assert sum(a * b for a, b in zip(objective, w)) == res.value
