"""Counter-machine reachability as a system of integer linear constraints.

The system is supported by two fixed atoms (``IOTA = 1``, ``ZETA = 2``) rather
than equivariant, so it is generated directly over the atoms ``{1..n}``:

* ``e[a,b]`` in {0,1} marks an edge of a graph whose only path runs from
  ``IOTA`` to ``ZETA``;
* ``t[i,a] = 1`` assigns instruction ``i`` to the inner node ``a``;
* ``c[a,b,g,k] = 1`` for exactly ``conf(k)`` atoms ``g`` stores the value of
  counter ``k`` on the edge ``a -> b``.

A run of the machine yields a nonnegative integer solution; see
:func:`run_to_witness` and :func:`check_witness`.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping, Sequence

IOTA, ZETA = 1, 2

ZERO_TEST = "Z"

Var = tuple  # ("e", a, b) | ("t", i, a) | ("c", a, b, g, k); all 1-based


def var_name(v: Var) -> str:
    return f"{v[0]}[{','.join(map(str, v[1:]))}]"


def parse_var(text: str) -> Var:
    kind, _, rest = text.strip().partition("[")
    if kind not in ("e", "t", "c") or not rest.endswith("]"):
        raise ValueError(f"bad variable name {text!r}")
    parts = tuple(int(p) for p in rest[:-1].split(","))
    if len(parts) != {"e": 2, "t": 2, "c": 4}[kind]:
        raise ValueError(f"bad variable name {text!r}")
    return (kind, *parts)


@dataclass(frozen=True)
class CounterMachine:
    dimension: int
    instructions: tuple[tuple[int | str, ...], ...]  # entry is an update or ZERO_TEST

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("counter machine needs at least one counter")
        ins = tuple(tuple(i) for i in self.instructions)
        for n, i in enumerate(ins, 1):
            if len(i) != self.dimension:
                raise ValueError(f"instruction {n} has {len(i)} entries, expected {self.dimension}")
            for v in i:
                if v != ZERO_TEST and not isinstance(v, int):
                    raise ValueError(f"instruction {n}: entry {v!r} is neither an integer nor {ZERO_TEST}")
        object.__setattr__(self, "instructions", ins)

    def zero_tests(self, k: int) -> list[int]:
        """1-based indices of the instructions testing counter ``k`` (0-based) for zero."""
        return [n for n, i in enumerate(self.instructions, 1) if i[k] == ZERO_TEST]

    def updates(self, k: int) -> list[int]:
        return [n for n, i in enumerate(self.instructions, 1) if i[k] != ZERO_TEST]

    def step(self, conf: Sequence[int], n: int) -> tuple[int, ...] | None:
        """Configuration after instruction ``n`` (1-based), or None if it is blocked."""
        out = []
        for v, u in zip(conf, self.instructions[n - 1]):
            if u == ZERO_TEST:
                if v != 0:
                    return None
                out.append(0)
            else:
                if v + u < 0:
                    return None
                out.append(v + u)
        return tuple(out)


def parse_machine(text: str) -> CounterMachine:
    """``dim d`` followed by one instruction per line, ``d`` tokens each (integers or ``Z``)."""
    lines = [(n, l.split("#", 1)[0].split()) for n, l in enumerate(text.splitlines(), 1)]
    lines = [(n, toks) for n, toks in lines if toks]
    if not lines or lines[0][1][0] != "dim" or len(lines[0][1]) != 2:
        raise ValueError("machine file must start with a 'dim d' line")
    try:
        d = int(lines[0][1][1])
    except ValueError:
        raise ValueError(f"line {lines[0][0]}: bad dimension") from None
    ins = []
    for n, toks in lines[1:]:
        if len(toks) != d:
            raise ValueError(f"line {n}: expected {d} tokens, got {len(toks)}")
        try:
            ins.append(tuple(ZERO_TEST if t == ZERO_TEST else int(t) for t in toks))
        except ValueError:
            raise ValueError(f"line {n}: tokens must be integers or {ZERO_TEST}") from None
    return CounterMachine(d, tuple(ins))


def format_machine(m: CounterMachine) -> str:
    return "\n".join([f"dim {m.dimension}"] + [" ".join(map(str, i)) for i in m.instructions]) + "\n"


@dataclass(frozen=True)
class Run:
    configs: tuple[tuple[int, ...], ...]
    steps: tuple[int, ...]  # 1-based instruction indices


def validate_run(m: CounterMachine, r: Run) -> None:
    if len(r.steps) != len(r.configs) - 1:
        raise ValueError("a run has one more configuration than steps")
    for conf in r.configs:
        if len(conf) != m.dimension or any(v < 0 for v in conf):
            raise ValueError(f"{conf} is not a configuration of a {m.dimension}-counter machine")
    for j, n in enumerate(r.steps):
        if not 1 <= n <= len(m.instructions):
            raise ValueError(f"step {j + 1} uses unknown instruction {n}")
        if m.step(r.configs[j], n) != tuple(r.configs[j + 1]):
            raise ValueError(f"step {j + 1}: instruction {n} does not lead from {r.configs[j]} to {r.configs[j + 1]}")


def run_from_steps(m: CounterMachine, c0: Sequence[int], steps: Sequence[int]) -> Run:
    confs = [tuple(c0)]
    for j, n in enumerate(steps):
        if not 1 <= n <= len(m.instructions):
            raise ValueError(f"step {j + 1} uses unknown instruction {n}")
        nxt = m.step(confs[-1], n)
        if nxt is None:
            raise ValueError(f"step {j + 1}: instruction {n} is blocked at {confs[-1]}")
        confs.append(nxt)
    r = Run(tuple(confs), tuple(steps))
    validate_run(m, r)
    return r


# ---------------------------------------------------------------- the system


@dataclass(frozen=True)
class Constraint:
    family: str
    terms: tuple[tuple[Var, int], ...]
    sense: str  # "<=", "=" or ">="
    rhs: int

    def holds(self, value: Mapping[Var, int]) -> bool:
        lhs = sum(c * value.get(v, 0) for v, c in self.terms)
        return {"<=": lhs <= self.rhs, "=": lhs == self.rhs, ">=": lhs >= self.rhs}[self.sense]

    def text(self) -> str:
        out = ""
        for v, c in self.terms:
            body = var_name(v) if abs(c) == 1 else f"{abs(c)}{var_name(v)}"
            out += ("-" if c < 0 else "") + body if not out else (" - " if c < 0 else " + ") + body
        return f"({self.family}) {out or '0'} {self.sense} {self.rhs}"


@dataclass(frozen=True)
class CMInstance:
    machine: CounterMachine
    c0: tuple[int, ...]
    cf: tuple[int, ...]
    atom_count: int
    variables: tuple[Var, ...]
    constraints: tuple[Constraint, ...]
    by_variable: Mapping[Var, tuple[int, ...]] = field(repr=False, compare=False, default_factory=dict)

    def families(self) -> dict[str, int]:
        out: dict[str, int] = defaultdict(int)
        for c in self.constraints:
            out[c.family] += 1
        return dict(out)


def _e(a, b):
    return ("e", a, b)


def _t(i, a):
    return ("t", i, a)


def _c(a, b, g, k):
    return ("c", a, b, g, k)


def encode(m: CounterMachine, c0: Sequence[int], cf: Sequence[int], n: int) -> CMInstance:
    """All constraints instantiated over the atoms ``{1..n}``; ``k`` is 1-based in names."""
    if n < 3:
        raise ValueError("the encoding needs at least 3 atoms")
    c0, cf = tuple(c0), tuple(cf)
    for conf in (c0, cf):
        if len(conf) != m.dimension or any(v < 0 for v in conf):
            raise ValueError(f"{conf} is not a configuration of a {m.dimension}-counter machine")
    atoms = range(1, n + 1)
    d = m.dimension
    ins = range(1, len(m.instructions) + 1)
    inner = [a for a in atoms if a not in (IOTA, ZETA)]
    pairs = list(itertools.permutations(atoms, 2))
    triples = list(itertools.permutations(atoms, 3))
    variables = (
        [_e(a, b) for a, b in pairs]
        + [_t(i, a) for i in ins for a in atoms]
        + [_c(a, b, g, k) for a, b, g in triples for k in range(1, d + 1)]
    )
    out: list[Constraint] = []

    def add(family, terms, sense, rhs):
        out.append(Constraint(family, tuple((v, c) for v, c in terms if c), sense, rhs))

    for a, b in pairs:
        add("42", [(_e(a, b), 1)], "<=", 1)
    for a in inner:
        ins_ = [(_e(b, a), 1) for b in atoms if b != a]
        outs = [(_e(a, b), 1) for b in atoms if b != a]
        add("43", ins_ + [(v, -c) for v, c in outs], "=", 0)
        add("43", outs, "<=", 1)
    add("44", [(_e(b, IOTA), 1) for b in atoms if b != IOTA], "=", 0)
    add("44", [(_e(IOTA, b), 1) for b in atoms if b != IOTA], "=", 1)
    add("44", [(_e(b, ZETA), 1) for b in atoms if b != ZETA], "=", 1)
    add("44", [(_e(ZETA, b), 1) for b in atoms if b != ZETA], "=", 0)
    for a in inner:
        add("45", [(_t(i, a), 1) for i in ins] + [(_e(a, b), -1) for b in atoms if b != a], "=", 0)
    # instructions carry no meaning at the end nodes; pinned so every variable is determined
    for a in (IOTA, ZETA):
        for i in ins:
            add("t-end", [(_t(i, a), 1)], "=", 0)
    for k in range(1, d + 1):
        add("c0", [(_c(IOTA, b, g, k), 1) for b, g in itertools.permutations(atoms, 2) if IOTA not in (b, g)], "=", c0[k - 1])
        add("cf", [(_c(b, ZETA, g, k), 1) for b, g in itertools.permutations(atoms, 2) if ZETA not in (b, g)], "=", cf[k - 1])
    for a in inner:
        for k in range(1, d + 1):
            incoming = [(_c(b, a, g, k), 1) for b, g in itertools.permutations(atoms, 2) if a not in (b, g)]
            outgoing = [(_c(a, b, g, k), -1) for b, g in itertools.permutations(atoms, 2) if a not in (b, g)]
            upd = [(_t(i, a), m.instructions[i - 1][k - 1]) for i in m.updates(k - 1)]
            add("48", incoming + upd + outgoing, "=", 0)
    for a, b, g in triples:
        for k in range(1, d + 1):
            add("46", [(_c(a, b, g, k), 1), (_e(a, b), -1)], "<=", 0)
            zt = m.zero_tests(k - 1)
            if zt:
                add("49", [(_c(a, b, g, k), 1)] + [(_t(i, a), 1) for i in zt], "<=", 1)
    for v in variables:
        add("nonneg", [(v, 1)], ">=", 0)

    index: dict[Var, list[int]] = defaultdict(list)
    for r, con in enumerate(out):
        for v, _ in con.terms:
            index[v].append(r)
    return CMInstance(m, c0, cf, n, tuple(variables), tuple(out), {v: tuple(rs) for v, rs in index.items()})


def atoms_needed(r: Run) -> int:
    """Fewest atoms for :func:`run_to_witness`: the path, and room for every counter value."""
    biggest = max((v for conf in r.configs for v in conf), default=0)
    return max(3, len(r.steps) + 2, biggest + 2)


def run_to_witness(m: CounterMachine, r: Run, inst: CMInstance) -> dict[Var, int]:
    """Nonzero entries of the solution encoding ``r`` as the path ``IOTA -> 3 -> 4 ... -> ZETA``."""
    validate_run(m, r)
    if r.configs[0] != inst.c0 or r.configs[-1] != inst.cf:
        raise ValueError("run does not go from the instance's source to its target")
    need = atoms_needed(r)
    if inst.atom_count < need:
        raise ValueError(f"run needs at least {need} atoms, instance has {inst.atom_count}")
    path = [IOTA] + list(range(3, 3 + len(r.steps))) + [ZETA]
    x: dict[Var, int] = {}
    for j, (a, b) in enumerate(zip(path, path[1:])):
        x[_e(a, b)] = 1
        spare = [g for g in range(1, inst.atom_count + 1) if g not in (a, b)]
        for k, v in enumerate(r.configs[j], 1):
            for g in spare[:v]:
                x[_c(a, b, g, k)] = 1
    for a, n in zip(path[1:-1], r.steps):
        x[_t(n, a)] = 1
    return x


def check_witness(inst: CMInstance, assignment: Mapping[Var, int]) -> tuple[bool, list[Constraint]]:
    unknown = [v for v in assignment if v not in inst.by_variable]
    if unknown:
        raise ValueError(f"assignment mentions unknown variables, e.g. {var_name(unknown[0])}")
    bad = [c for c in inst.constraints if not c.holds(assignment)]
    return not bad, bad


def violated_after_change(inst: CMInstance, assignment: Mapping[Var, int], v: Var, new: int) -> list[Constraint]:
    """Constraints broken once ``v`` is set to ``new``; only those mentioning ``v`` are re-checked."""
    changed = dict(assignment)
    changed[v] = new
    return [inst.constraints[r] for r in inst.by_variable[v] if not inst.constraints[r].holds(changed)]


def format_assignment(x: Mapping[Var, int]) -> str:
    return "".join(f"{var_name(v)} = {x[v]}\n" for v in sorted(x) if x[v])


def parse_assignment(text: str) -> dict[Var, int]:
    out: dict[Var, int] = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, eq, val = line.partition("=")
        if not eq:
            raise ValueError(f"line {n}: expected 'name = value'")
        try:
            out[parse_var(name)] = int(val)
        except ValueError as exc:
            raise ValueError(f"line {n}: {exc}") from None
    return out
