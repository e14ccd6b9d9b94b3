"""Equivariant orbit-finite systems in normal form.

Rows and columns are disjoint unions of orbits ``A^(k)`` of non-repeating
k-tuples of atoms. An orbit of ``A^(p) x A^(m)`` is a partial injection from
row positions to column positions (position ``x`` of the row tuple equals
position ``y`` of the column tuple iff ``x -> y``), so a matrix is a sparse map
``(row orbit, column orbit, injection) -> integer``.

Indices are 0-based in memory and 1-based in the text format.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .numerics import format_rational


class Sense(enum.Enum):
    GEQ = "geq"
    EQ = "eq"


class Sign(enum.Enum):
    FREE = "free"
    NONNEG = "nonneg"


@dataclass(frozen=True, order=True)
class PartialInjection:
    """``mapping[x-1]`` is the column position hit by row position ``x``, or 0."""

    source_arity: int
    target_arity: int
    mapping: tuple[int, ...]

    @classmethod
    def identity(cls, p: int) -> "PartialInjection":
        return cls(p, p, tuple(range(1, p + 1)))

    @classmethod
    def empty(cls, p: int, m: int) -> "PartialInjection":
        return cls(p, m, (0,) * p)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.mapping, 1) if y)

    def problems(self) -> list[str]:
        out = []
        if len(self.mapping) != self.source_arity:
            out.append(f"injection {self.text()} has length {len(self.mapping)}, expected {self.source_arity}")
        if any(y < 0 or y > self.target_arity for y in self.mapping):
            out.append(f"injection {self.text()} maps outside 1..{self.target_arity}")
        hit = [y for y in self.mapping if y]
        if len(hit) != len(set(hit)):
            out.append(f"injection {self.text()} is not injective")
        return out

    def text(self) -> str:
        return ",".join(map(str, self.mapping)) if self.mapping else "-"


def all_partial_injections(p: int, m: int) -> Iterator[PartialInjection]:
    """Every partial injection from ``{1..p}`` to ``{1..m}``, in lexicographic order."""
    for mapping in itertools.product(range(m + 1), repeat=p):
        hit = [y for y in mapping if y]
        if len(hit) == len(set(hit)):
            yield PartialInjection(p, m, mapping)


@dataclass(frozen=True)
class RowOrbit:
    dim: int
    sense: Sense = Sense.GEQ
    target: int = 0


@dataclass(frozen=True)
class ColOrbit:
    dim: int
    sign: Sign = Sign.FREE
    objective: int = 0


CoefKey = tuple[int, int, PartialInjection]


@dataclass(frozen=True)
class OrbitSystem:
    rows: tuple[RowOrbit, ...] = ()
    cols: tuple[ColOrbit, ...] = ()
    coefficients: Mapping[CoefKey, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        object.__setattr__(self, "coefficients", {k: v for k, v in self.coefficients.items() if v != 0})
        blocks: dict[tuple[int, int], list] = {}
        for (i, j, inj), v in self.coefficients.items():
            blocks.setdefault((i, j), []).append((inj, v))
        object.__setattr__(self, "_blocks", {k: sorted(v) for k, v in blocks.items()})

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self.coefficients.items()))))

    def coef(self, i: int, j: int, inj: PartialInjection) -> int:
        return self.coefficients.get((i, j, inj), 0)

    def block(self, i: int, j: int) -> list[tuple[PartialInjection, int]]:
        """Nonzero (injection, value) pairs between row orbit ``i`` and column orbit ``j``."""
        return list(self._blocks.get((i, j), ()))

    def objective(self) -> tuple[int, ...]:
        return tuple(c.objective for c in self.cols)

    def is_canonical(self) -> bool:
        return all(r.sense is Sense.GEQ for r in self.rows) and all(c.sign is Sign.FREE for c in self.cols)

    def with_objective(self, objective) -> "OrbitSystem":
        cols = tuple(ColOrbit(c.dim, c.sign, int(s)) for c, s in zip(self.cols, objective))
        return OrbitSystem(self.rows, cols, self.coefficients)


class MaxTag(enum.Enum):
    NEG_INFINITY = "-inf"
    FINITE = "finite"
    POS_INFINITY = "+inf"


@dataclass(frozen=True)
class MaxResult:
    tag: MaxTag
    value: Fraction | None = None
    attained: bool | None = None

    @classmethod
    def neg_inf(cls) -> "MaxResult":
        return cls(MaxTag.NEG_INFINITY)

    @classmethod
    def pos_inf(cls) -> "MaxResult":
        return cls(MaxTag.POS_INFINITY)

    @classmethod
    def finite(cls, value, attained: bool | None = None) -> "MaxResult":
        return cls(MaxTag.FINITE, Fraction(value), attained)

    def same_value(self, other: "MaxResult") -> bool:
        """Equality of suprema, ignoring the attained flag."""
        return self.tag is other.tag and self.value == other.value

    def __str__(self) -> str:
        if self.tag is MaxTag.NEG_INFINITY:
            return "-inf"
        if self.tag is MaxTag.POS_INFINITY:
            return "+inf"
        s = f"sup = {format_rational(self.value)}"
        if self.attained is not None:
            s += " (attained)" if self.attained else " (not attained)"
        return s


# ---------------------------------------------------------------- validation


def validate(sys: OrbitSystem) -> list[str]:
    out = []
    for i, r in enumerate(sys.rows):
        if r.dim < 0:
            out.append(f"row orbit {i + 1} has negative dimension")
    for j, c in enumerate(sys.cols):
        if c.dim < 0:
            out.append(f"column orbit {j + 1} has negative dimension")
    for (i, j, inj), v in sorted(sys.coefficients.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
        where = f"coefficient ({i + 1}, {j + 1}, {inj.text()})"
        if not 0 <= i < len(sys.rows):
            out.append(f"{where} references missing row orbit {i + 1}")
            continue
        if not 0 <= j < len(sys.cols):
            out.append(f"{where} references missing column orbit {j + 1}")
            continue
        if inj.source_arity != sys.rows[i].dim or inj.target_arity != sys.cols[j].dim:
            out.append(
                f"{where} has arities ({inj.source_arity}, {inj.target_arity}), "
                f"orbits have ({sys.rows[i].dim}, {sys.cols[j].dim})"
            )
            continue
        out.extend(f"{where}: {p}" for p in inj.problems())
        if v == 0:
            out.append(f"{where} stores a zero")
    return out


def atom_dimension(sys: OrbitSystem) -> int:
    return max([r.dim for r in sys.rows] + [c.dim for c in sys.cols] + [0])


def canonicalize(sys: OrbitSystem) -> OrbitSystem:
    """Rewrite to GEQ rows over FREE columns with the same pointwise solutions.

    An EQ row becomes itself plus a negated copy right after it; a NONNEG
    column gains a trailing row orbit ``x >= 0`` of the same dimension.
    """
    rows: list[RowOrbit] = []
    coefs: dict[CoefKey, int] = {}
    for i, r in enumerate(sys.rows):
        base = len(rows)
        rows.append(RowOrbit(r.dim, Sense.GEQ, r.target))
        for j in range(len(sys.cols)):
            for inj, v in sys.block(i, j):
                coefs[(base, j, inj)] = v
        if r.sense is Sense.EQ:
            rows.append(RowOrbit(r.dim, Sense.GEQ, -r.target))
            for j in range(len(sys.cols)):
                for inj, v in sys.block(i, j):
                    coefs[(base + 1, j, inj)] = -v
    for j, c in enumerate(sys.cols):
        if c.sign is Sign.NONNEG:
            coefs[(len(rows), j, PartialInjection.identity(c.dim))] = 1
            rows.append(RowOrbit(c.dim, Sense.GEQ, 0))
    cols = tuple(ColOrbit(c.dim, Sign.FREE, c.objective) for c in sys.cols)
    return OrbitSystem(tuple(rows), cols, coefs)


# ---------------------------------------------------------------- text format


class SystemFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _int(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise SystemFormatError(f"expected integer {what}, got {tok!r}", line, col) from None


def _parse_injection(tok: str, p: int, m: int, line: int, col: int) -> PartialInjection:
    if tok == "-":
        mapping: tuple[int, ...] = ()
    else:
        mapping = tuple(_int(t, line, col, "injection entry") for t in tok.split(","))
    inj = PartialInjection(p, m, mapping)
    problems = inj.problems()
    if problems:
        raise SystemFormatError(problems[0], line, col)
    return inj


def parse_system(text: str) -> OrbitSystem:
    """Parse the line-oriented system format; raises :class:`SystemFormatError`."""
    row_dims: list[int] | None = None
    col_dims: list[int] | None = None
    senses: dict[int, Sense] = {}
    signs: dict[int, Sign] = {}
    targets: dict[int, int] = {}
    objectives: dict[int, int] = {}
    coefs: dict[CoefKey, int] = {}
    pending: list[tuple[int, list[tuple[str, int]]]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks: list[tuple[str, int]] = []
        pos = 0
        for t in body.split():
            pos = body.index(t, pos)
            toks.append((t, pos + 1))
            pos += len(t)
        if not toks:
            continue
        head = toks[0][0]
        if head in ("rows:", "cols:"):
            dims = [_int(t, lineno, c, "dimension") for t, c in toks[1:]]
            if any(d < 0 for d in dims):
                raise SystemFormatError("negative orbit dimension", lineno)
            if head == "rows:":
                if row_dims is not None:
                    raise SystemFormatError("duplicate rows: declaration", lineno, 1)
                row_dims = dims
            else:
                if col_dims is not None:
                    raise SystemFormatError("duplicate cols: declaration", lineno, 1)
                col_dims = dims
        elif head in ("sense", "sign", "coef", "target", "objective"):
            pending.append((lineno, toks))
        else:
            raise SystemFormatError(f"unknown directive {head!r}", lineno, toks[0][1])

    if row_dims is None:
        row_dims = []
    if col_dims is None:
        col_dims = []

    def index(tok, n, lineno, what):
        t, c = tok
        k = _int(t, lineno, c, f"{what} index")
        if not 1 <= k <= n:
            raise SystemFormatError(f"{what} index {k} out of range 1..{n}", lineno, c)
        return k - 1

    for lineno, toks in pending:
        head = toks[0][0]
        arity = {"sense": 3, "sign": 3, "coef": 5, "target": 3, "objective": 3}[head]
        if len(toks) != arity:
            raise SystemFormatError(f"{head} takes {arity - 1} arguments", lineno, toks[0][1])
        if head == "sense":
            i = index(toks[1], len(row_dims), lineno, "row")
            try:
                senses[i] = Sense(toks[2][0])
            except ValueError:
                raise SystemFormatError(f"unknown sense {toks[2][0]!r}", lineno, toks[2][1]) from None
        elif head == "sign":
            j = index(toks[1], len(col_dims), lineno, "column")
            try:
                signs[j] = Sign(toks[2][0])
            except ValueError:
                raise SystemFormatError(f"unknown sign {toks[2][0]!r}", lineno, toks[2][1]) from None
        elif head == "target":
            i = index(toks[1], len(row_dims), lineno, "row")
            targets[i] = _int(toks[2][0], lineno, toks[2][1], "target")
        elif head == "objective":
            j = index(toks[1], len(col_dims), lineno, "column")
            objectives[j] = _int(toks[2][0], lineno, toks[2][1], "objective")
        else:
            i = index(toks[1], len(row_dims), lineno, "row")
            j = index(toks[2], len(col_dims), lineno, "column")
            inj = _parse_injection(toks[3][0], row_dims[i], col_dims[j], lineno, toks[3][1])
            key = (i, j, inj)
            if key in coefs:
                raise SystemFormatError(f"duplicate coefficient ({i + 1}, {j + 1}, {inj.text()})", lineno, toks[0][1])
            coefs[key] = _int(toks[4][0], lineno, toks[4][1], "coefficient")

    rows = tuple(RowOrbit(d, senses.get(i, Sense.GEQ), targets.get(i, 0)) for i, d in enumerate(row_dims))
    cols = tuple(ColOrbit(d, signs.get(j, Sign.FREE), objectives.get(j, 0)) for j, d in enumerate(col_dims))
    sys = OrbitSystem(rows, cols, coefs)
    problems = validate(sys)
    if problems:
        raise SystemFormatError(problems[0])
    return sys


def format_system(sys: OrbitSystem) -> str:
    lines = [
        ("rows: " + " ".join(str(r.dim) for r in sys.rows)).rstrip(),
        ("cols: " + " ".join(str(c.dim) for c in sys.cols)).rstrip(),
    ]
    for i, r in enumerate(sys.rows):
        if r.sense is not Sense.GEQ:
            lines.append(f"sense {i + 1} {r.sense.value}")
    for j, c in enumerate(sys.cols):
        if c.sign is not Sign.FREE:
            lines.append(f"sign {j + 1} {c.sign.value}")
    for (i, j, inj), v in sorted(sys.coefficients.items(), key=lambda kv: kv[0]):
        lines.append(f"coef {i + 1} {j + 1} {inj.text()} {v}")
    for i, r in enumerate(sys.rows):
        if r.target:
            lines.append(f"target {i + 1} {r.target}")
    for j, c in enumerate(sys.cols):
        if c.objective:
            lines.append(f"objective {j + 1} {c.objective}")
    return "\n".join(lines) + "\n"
