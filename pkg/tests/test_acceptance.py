"""Acceptance gate: one PASS/FAIL line per criterion, with wall-clock time against its budget.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
import io
import math
import random
import statistics
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import SYSTEMS, load, machine_corpus  # noqa: E402
from oracles import vertex_enumeration_max, vertices  # noqa: E402
from orbitlp.cli import main  # noqa: E402
from orbitlp.cm_encode import atoms_needed, check_witness, encode, run_to_witness, violated_after_change  # noqa: E402
from orbitlp.corpus import CorpusConfig, corpus, sized_system  # noqa: E402
from orbitlp.instantiate import instantiate_finite, oracle_supremum, orbit_sums, symmetrize  # noqa: E402
from orbitlp.numerics import Polynomial, parse_polynomial  # noqa: E402
from orbitlp.orbit_model import ColOrbit, MaxResult, OrbitSystem  # noqa: E402
from orbitlp.paramlp import (  # noqa: E402
    ParamIneq,
    ParamSystem,
    almost_all_solve,
    evaluate_at,
    valid_threshold,
)
from orbitlp.reduction import build_p1, build_p2  # noqa: E402
from orbitlp.simplex import FiniteLP, Status, feasible, maximize  # noqa: E402

F = Fraction
CORPUS = CorpusConfig(seed=0, size=200)


def ineq(*lhs, rhs="0"):
    return ParamIneq(tuple(parse_polynomial(p) for p in lhs), parse_polynomial(rhs))


def cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def lp_result(r) -> MaxResult:
    if r.tag is Status.INFEASIBLE:
        return MaxResult.neg_inf()
    if r.tag is Status.UNBOUNDED:
        return MaxResult.pos_inf()
    return MaxResult.finite(r.value, True)


# ---------------------------------------------------------------- criteria


def check_1():
    code, out = cli("reduce", SYSTEMS / "sum_others.orb")
    body = [l for l in out.splitlines() if not l.startswith(("#", "objective"))]
    assert code == 0
    assert sorted(body) == sorted(["(n-1)·x1 >= n", "n·x1 >= n"]), body


def check_2():
    s = load("flow_doubled")
    p1 = build_p1(s, keep_trivial=True).inequalities
    assert sorted(map(str, p1)) == sorted(map(str, [ineq("-1", "-n+1"), ineq("0", "0"), ineq("n", "0", rhs="1")]))
    rp = build_p2(s)
    assert rp.system.inequalities == (ineq("-n+1", "-n+1"), ineq("n^2-n", "0", rhs="n^2-n"))
    assert rp.objective == (0, 3)
    code, out = cli("max", SYSTEMS / "flow_doubled.orb")
    assert code == 0 and out.splitlines()[0] == "sup = -3 (attained)"


def check_3():
    code, out = cli("max", "--minimize", SYSTEMS / "sum_others_min.orb")
    assert code == 0 and out.strip() == "inf = 2 (not attained)"


def check_4():
    code, out = cli("solve", SYSTEMS / "flow.orb")
    assert code == 1 and out.strip() == "UNSOLVABLE"


def check_5():
    p_degen = ParamSystem(3, (ineq("n^2", "-n^2", "n"), ineq("-n", "n+3", "0")))
    v = almost_all_solve(p_degen)
    assert v.solvable and len(v.trace) == 3
    assert [r.outcome for r in v.trace] == ["degenerate", "degenerate", "solvable"]
    assert v.final.format(["x", "y", "z"]).splitlines() == ["n·z >= 0", "3·y >= 0", "x - y = 0", "-x + y = 0"]


def check_6():
    compared = 0
    for s in corpus(CORPUS):
        rp = build_p2(s)
        for n in range(rp.n_floor, rp.n_floor + 4):
            oracle = oracle_supremum(s, n)
            reduced = lp_result(maximize(evaluate_at(rp.system, n), rp.objective))
            assert oracle.same_value(reduced), (s, n, oracle, reduced)
            compared += 1
    assert compared == 4 * CORPUS.size


def check_7():
    for s in corpus(CORPUS):
        rp = build_p2(s)
        for n in range(rp.dim_d, rp.dim_d + 4):
            here, nxt = evaluate_at(rp.system, n), evaluate_at(rp.system, n + 1)
            points = vertices(here)
            r = feasible(here)
            if r.tag is Status.FEASIBLE:
                points.add(r.witness)
            for x in points:
                assert nxt.satisfied_by(x), (s, n, x)


def check_8():
    checked = 0
    for s in corpus(CORPUS):
        for n in range(0, 5):
            inst = instantiate_finite(s, n)
            r = feasible(inst.lp)
            if r.tag is not Status.FEASIBLE:
                continue
            y = symmetrize(inst, r.witness)
            assert inst.lp.satisfied_by(y)
            assert orbit_sums(inst, y) == orbit_sums(inst, r.witness)
            checked += 1
    assert checked > 0
    inst = instantiate_finite(OrbitSystem((), (ColOrbit(2),), {}), 4)
    value = {(1, 2): 3, (2, 1): 3}
    x = tuple(F(value.get(t, -1 if 1 in t else -2 if 2 in t else 0)) for _, t in inst.column_labels)
    avg = dict(zip((t for _, t in inst.column_labels), symmetrize(inst, x, atoms=(1, 2))))
    assert avg[(1, 3)] == avg[(4, 2)] == F(-3, 2)


def _random_param_system(rng: random.Random) -> ParamSystem:
    k = rng.randint(1, 3)

    def poly():
        return Polynomial(tuple(rng.randint(-3, 3) for _ in range(rng.randint(0, 3))))

    return ParamSystem(k, tuple(ParamIneq(tuple(poly() for _ in range(k)), poly()) for _ in range(rng.randint(1, 4))))


def check_9():
    systems = [build_p2(s).system for s in corpus(CORPUS)] + [build_p1(s) for s in corpus(CORPUS)]
    rng = random.Random(9)
    systems += [_random_param_system(rng) for _ in range(300)]
    solvable = 0
    for p in systems:
        v = almost_all_solve(p)
        if not v.solvable:
            continue
        solvable += 1
        n0 = valid_threshold(p, v.witness)
        for n in range(n0, n0 + 11):
            assert evaluate_at(p, n).satisfied_by(v.witness), (p, v.witness, n)
    assert solvable > 100


def simplex_corpus(seed: int = 10, size: int = 500):
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        k = rng.randint(1, 3)
        rows = [(tuple(rng.randint(-4, 4) for _ in range(k)), rng.randint(-4, 4)) for _ in range(rng.randint(0, 6))]
        eq = [r for r in rows if rng.random() < 0.15]
        geq = [r for r in rows if r not in eq]
        out.append((FiniteLP(k, tuple(geq), tuple(eq)), tuple(rng.randint(-4, 4) for _ in range(k))))
    return out


def check_10():
    for lp, objective in simplex_corpus():
        got = lp_result(maximize(lp, objective))
        ref = vertex_enumeration_max(lp, objective)
        assert got.tag is ref.tag and got.value == ref.value, (lp, objective, got, ref)


def check_11():
    machines = machine_corpus()
    assert len(machines) == 20
    assert any("Z" in ins for _, m, _ in machines for ins in m.instructions)
    for name, m, run in machines:
        assert m.dimension <= 2 and len(run.steps) <= 6
        inst = encode(m, run.configs[0], run.configs[-1], atoms_needed(run))
        x = run_to_witness(m, run, inst)
        assert check_witness(inst, x) == (True, []), name
        for v in inst.variables:
            assert violated_after_change(inst, x, v, 1 - x.get(v, 0)), (name, v)


def scaling_slope(sizes=range(2, 21, 2), seeds=3, repeats=3) -> float:
    """Least-squares slope of log(solve time) against log(number of orbits), atom dimension 2."""
    xs, ys = [], []
    for m in sizes:
        times = []
        for seed in range(seeds):
            s = sized_system(random.Random(1000 * m + seed), m // 2, m - m // 2, 2)
            best = math.inf
            for _ in range(repeats):
                t = time.perf_counter()
                almost_all_solve(build_p2(s).system)
                best = min(best, time.perf_counter() - t)
            times.append(best)
        xs.append(math.log(m))
        ys.append(math.log(statistics.median(times)))
    return statistics.linear_regression(xs, ys).slope


def check_12():
    slope = scaling_slope()
    assert slope <= 3.5, slope
    return f"slope {slope:.2f}"


CRITERIA = [
    (1, "reduce on sum_others gives (n-1)x >= n, nx >= n", 1, check_1),
    (2, "flow_doubled: sup -3 attained, P1 and P2 exact", 1, check_2),
    (3, "sum_others: infimum 2, not attained", 1, check_3),
    (4, "flow: unsolvable", 1, check_4),
    (5, "two degenerate rounds, then solvable", 1, check_5),
    (6, "oracle equivalence on 200 systems, n in [2d, 2d+3]", 120, check_6),
    (7, "monotonicity of P2 vertices, n in [d, d+3]", 60, check_7),
    (8, "symmetrization keeps feasibility and orbit sums", 60, check_8),
    (9, "threshold soundness n0 .. n0+10", 60, check_9),
    (10, "simplex vs vertex enumeration on 500 LPs", 60, check_10),
    (11, "counter-machine witness round trip and mutations", 30, check_11),
    (12, "solve time vs orbits at dimension 2, slope <= 3.5", 120, check_12),
]


def run_criterion(num, title, budget, fn) -> bool:
    start = time.perf_counter()
    note, ok = "", True
    try:
        note = fn() or ""
    except AssertionError as exc:
        ok, note = False, f"assertion failed: {str(exc)[:200]}"
    except Exception as exc:
        ok, note = False, f"{type(exc).__name__}: {str(exc)[:200]}"
    elapsed = time.perf_counter() - start
    if ok and elapsed > budget:
        ok, note = False, f"over budget {budget}s"
    extra = f"; {note}" if note else ""
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} ({elapsed:.2f}s{extra})", flush=True)
    return ok


@pytest.mark.parametrize("num,title,budget,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, budget, fn, capsys):
    with capsys.disabled():
        ok = run_criterion(num, title, budget, fn)
    assert ok


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
