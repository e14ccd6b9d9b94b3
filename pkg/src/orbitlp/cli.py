"""Command-line front end.

Exit status: 0 on success (or a solvable/feasible answer), 1 for an
unsolvable system or a failed check, 2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import cm_encode as cm
from .instantiate import format_instance, instantiate_finite, oracle_supremum
from .numerics import format_rational
from .orbit_model import MaxResult, MaxTag, OrbitSystem, SystemFormatError, canonicalize, format_system, parse_system
from .paramlp import (
    almost_all_maximize,
    almost_all_solve,
    attaining_witness,
    evaluate_at,
    valid_threshold,
)
from .reduction import build_p1, build_p2, format_reduced
from .simplex import Status, maximize
from .transforms import fin_to_general, ineq_to_nonneg_eq, nonneg_eq_to_ineq

EXIT_OK, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> OrbitSystem:
    try:
        return parse_system(_read(path))
    except SystemFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _vector(xs: Sequence[Fraction]) -> list[str]:
    return [format_rational(v) for v in xs]


def _names(k: int) -> list[str]:
    return [f"x{j + 1}" for j in range(k)]


def _emit(args, report: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print("\n".join(lines))


def _report(verdict: str, sup=None, attained=None, threshold=None, witness=None, trace=None) -> dict:
    return {
        "verdict": verdict,
        "sup": sup,
        "attained": attained,
        "threshold": threshold,
        "witness": witness,
        "trace": trace,
    }


def _threshold(p2, x, d: int) -> int:
    return max(valid_threshold(p2, x), 2 * d)


# ---------------------------------------------------------------- subcommands


def cmd_solve(args) -> int:
    rp = build_p2(canonicalize(_load(args.file)))
    v = almost_all_solve(rp.system)
    trace = [r.describe() for r in v.trace] if args.trace else None
    lines = list(trace or [])
    if not v.solvable:
        lines.append("UNSOLVABLE")
        _emit(args, _report("UNSOLVABLE", trace=trace), lines)
        return EXIT_NO
    n0 = _threshold(rp.system, v.witness, rp.dim_d)
    w = _vector(v.witness)
    lines += [
        "SOLVABLE",
        "witness (orbit sums): " + ", ".join(f"{n} = {s}" for n, s in zip(_names(len(w)), w)),
        f"threshold: n >= {n0}",
    ]
    _emit(args, _report("SOLVABLE", threshold=n0, witness=w, trace=trace), lines)
    return EXIT_OK


def _flip(res: MaxResult) -> MaxResult:
    """Read a maximum of ``-S`` as a minimum of ``S``."""
    if res.tag is MaxTag.FINITE:
        return MaxResult(MaxTag.FINITE, -res.value, res.attained)
    return res


def _optimum_text(res: MaxResult, minimize: bool) -> str:
    if res.tag is MaxTag.NEG_INFINITY:
        return "+inf" if minimize else "-inf"
    if res.tag is MaxTag.POS_INFINITY:
        return "-inf" if minimize else "+inf"
    text = str(_flip(res) if minimize else res)
    return text.replace("sup", "inf", 1) if minimize else text


def cmd_max(args) -> int:
    sys_ = canonicalize(_load(args.file))
    rp = build_p2(sys_)
    objective = [-a for a in rp.objective] if args.minimize else list(rp.objective)
    res = almost_all_maximize(rp.system, objective)
    trace = None
    if args.trace:
        trace = [r.describe() for r in almost_all_solve(rp.system).trace]
    lines = list(trace or [])
    text = _optimum_text(res, args.minimize)
    lines.append(text)
    if res.tag is MaxTag.NEG_INFINITY:
        _emit(args, _report("UNSOLVABLE", sup=text, trace=trace), lines)
        return EXIT_NO
    threshold = witness = None
    if res.tag is MaxTag.FINITE:
        shown = _flip(res) if args.minimize else res
        sup = format_rational(shown.value)
        if res.attained:
            x = attaining_witness(rp.system, objective, res.value)
            witness = _vector(x)
            threshold = _threshold(rp.system, x, rp.dim_d)
            lines.append("witness (orbit sums): " + ", ".join(f"{n} = {s}" for n, s in zip(_names(len(x)), witness)))
            lines.append(f"threshold: n >= {threshold}")
    else:
        sup = text
    _emit(args, _report("SOLVABLE", sup=sup, attained=res.attained, threshold=threshold, witness=witness, trace=trace), lines)
    return EXIT_OK


def cmd_reduce(args) -> int:
    sys_ = canonicalize(_load(args.file))
    if args.stage == 1:
        p1 = build_p1(sys_)
        body = p1.format()
        print(f"# unknowns: {p1.unknowns} (common column values)\n" + (body + "\n" if body else ""), end="")
        return EXIT_OK
    print(format_reduced(build_p2(sys_), labels=args.labels), end="")
    return EXIT_OK


def cmd_instantiate(args) -> int:
    if args.atoms is None:
        raise InputError("instantiate needs --atoms N")
    inst = instantiate_finite(canonicalize(_load(args.file)), args.atoms)
    print(format_instance(inst), end="")
    if args.solve:
        sign = -1 if args.minimize else 1
        res = maximize(inst.lp, [sign * c for c in inst.objective])
        if res.tag is Status.INFEASIBLE:
            print("infeasible")
            return EXIT_NO
        if res.tag is Status.UNBOUNDED:
            print("unbounded")
            return EXIT_OK
        label = "min" if args.minimize else "max"
        print(f"{label} = {format_rational(sign * res.value)}")
        for (j, t), v in zip(inst.column_labels, res.witness):
            if v:
                print(f"x{j + 1}[{','.join(map(str, t))}] = {format_rational(v)}")
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise InputError(f"--range expects A..B, got {text!r}") from None
    if not sep or a < 0 or b < a:
        raise InputError(f"--range expects 0 <= A <= B, got {text!r}")
    return a, b


def _lp_result(lp, objective) -> MaxResult:
    res = maximize(lp, objective)
    if res.tag is Status.INFEASIBLE:
        return MaxResult.neg_inf()
    if res.tag is Status.UNBOUNDED:
        return MaxResult.pos_inf()
    return MaxResult.finite(res.value)


def cmd_crosscheck(args) -> int:
    sys_ = canonicalize(_load(args.file))
    rp = build_p2(sys_)
    if args.minimize:
        sys_ = sys_.with_objective([-a for a in sys_.objective()])
    objective = sys_.objective()
    lo, hi = _parse_range(args.range) if args.range else (rp.n_floor, rp.n_floor + 3)
    rows, ok = [], True
    for n in range(lo, hi + 1):
        oracle = oracle_supremum(sys_, n)
        reduced = _lp_result(evaluate_at(rp.system, n), objective)
        same = oracle.same_value(reduced)
        ok = ok and (same or n < rp.n_floor)
        row = {
            "n": n,
            "oracle": _optimum_text(MaxResult(oracle.tag, oracle.value), args.minimize),
            "reduced": _optimum_text(MaxResult(reduced.tag, reduced.value), args.minimize),
            "match": same,
        }
        rows.append(row)
        if args.format == "text":
            note = "" if n >= rp.n_floor else "  (below 2d, informational)"
            if same:
                print(f"n = {n}: match, {row['oracle']}{note}")
            else:
                print(f"n = {n}: MISMATCH, oracle {row['oracle']}, reduced {row['reduced']}{note}")
    if args.format == "json":
        print(json.dumps({"rows": rows, "ok": ok}, sort_keys=True))
    return EXIT_OK if ok else EXIT_NO


def cmd_transform(args) -> int:
    sys_ = _load(args.file)
    try:
        if args.to == "ineq":
            out = nonneg_eq_to_ineq(sys_)
        elif args.to == "nonneg-eq":
            out = ineq_to_nonneg_eq(canonicalize(sys_))
        else:
            out = fin_to_general(canonicalize(sys_))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(format_system(out), end="")
    return EXIT_OK


def _config(text: str | None, d: int, what: str) -> tuple[int, ...]:
    if text is None:
        return (0,) * d
    try:
        conf = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"{what} expects comma-separated integers, got {text!r}") from None
    if len(conf) != d or any(v < 0 for v in conf):
        raise InputError(f"{what} must be {d} nonnegative integers")
    return conf


def cmd_cm(args) -> int:
    try:
        m = cm.parse_machine(_read(args.machine))
    except ValueError as exc:
        raise InputError(f"{args.machine}: {exc}") from None
    c0 = _config(args.c0, m.dimension, "--c0")
    try:
        if args.action == "witness":
            steps = [int(s) for s in args.steps.split(",")] if args.steps else []
            run = cm.run_from_steps(m, c0, steps)
            n = args.atoms or cm.atoms_needed(run)
            inst = cm.encode(m, run.configs[0], run.configs[-1], n)
            print(f"# atoms: {n}; target: {','.join(map(str, run.configs[-1]))}")
            print(cm.format_assignment(cm.run_to_witness(m, run, inst)), end="")
            return EXIT_OK
        cf = _config(args.cf, m.dimension, "--cf")
        if args.atoms is None:
            raise InputError(f"cm {args.action} needs --atoms N")
        inst = cm.encode(m, c0, cf, args.atoms)
        if args.action == "encode":
            print(f"# atoms: {inst.atom_count}; variables: {len(inst.variables)}; constraints: {len(inst.constraints)}")
            for c in inst.constraints:
                print(c.text())
            return EXIT_OK
        if args.assignment is None:
            raise InputError("cm check needs an assignment file")
        ok, bad = cm.check_witness(inst, cm.parse_assignment(_read(args.assignment)))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if ok:
        print("OK")
        return EXIT_OK
    print(f"{len(bad)} violated constraints")
    for c in bad:
        print(c.text())
    return EXIT_NO


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("text", "json"), default="text")
    shared.add_argument("--trace", action="store_true", help="print the iterations of the almost-all solver")
    shared.add_argument("--atoms", type=int, metavar="N", help="number of atoms for finite instances")
    shared.add_argument("--range", metavar="A..B", help="atom counts to cross-check")
    shared.add_argument("--minimize", action="store_true", help="minimise the objective instead")

    p = argparse.ArgumentParser(prog="orbitlp", description="Orbit-finite linear programming.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn, helptext in (
        ("solve", cmd_solve, "decide finitary solvability"),
        ("max", cmd_max, "supremum of the objective over finitary solutions"),
        ("crosscheck", cmd_crosscheck, "compare the reduction against brute-force instantiation"),
    ):
        sp = sub.add_parser(name, parents=[shared], help=helptext)
        sp.add_argument("file")
        sp.set_defaults(func=fn)
    sp = sub.add_parser("reduce", parents=[shared], help="print the parametrised finite program")
    sp.add_argument("file")
    sp.add_argument("--stage", type=int, choices=(1, 2), default=2)
    sp.add_argument("--labels", action="store_true", help="annotate inequalities with their row pattern")
    sp.set_defaults(func=cmd_reduce)
    sp = sub.add_parser("instantiate", parents=[shared], help="print the finite LP over N atoms")
    sp.add_argument("file")
    sp.add_argument("--solve", action="store_true", help="also optimise the instance")
    sp.set_defaults(func=cmd_instantiate)
    sp = sub.add_parser("transform", parents=[shared], help="convert between problem forms")
    sp.add_argument("file")
    sp.add_argument("--to", required=True, choices=("ineq", "nonneg-eq", "embed-fin"))
    sp.set_defaults(func=cmd_transform)
    sp = sub.add_parser("cm", parents=[shared], help="counter-machine encoding")
    sp.add_argument("action", choices=("encode", "witness", "check"))
    sp.add_argument("machine")
    sp.add_argument("assignment", nargs="?")
    sp.add_argument("--c0", help="source configuration, e.g. 0,1")
    sp.add_argument("--cf", help="target configuration")
    sp.add_argument("--steps", help="instruction indices of the run, e.g. 1,1,2")
    sp.set_defaults(func=cmd_cm)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
