"""Exact scalars and univariate integer polynomials in the parameter ``n``.

Rationals are :class:`fractions.Fraction`; the polynomial type is a small
dense, immutable coefficient tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """``p/q``, or ``p`` for integral values."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of ``n**i``.

    The zero polynomial is the empty tuple. Trailing zeros are stripped on
    construction so equal polynomials compare equal.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: int = 1) -> "Polynomial":
        return cls((0,) * degree + (c,))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        # the zero polynomial counts as degree 0 for head/tail purposes
        return max(len(self.coeffs) - 1, 0)

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def monomial_count(self) -> int:
        return sum(1 for c in self.coeffs if c != 0)

    def drop_degree(self, d: int) -> "Polynomial":
        """The polynomial with the ``n**d`` monomial removed."""
        c = list(self.coeffs)
        if d < len(c):
            c[d] = 0
        return Polynomial(tuple(c))

    def __call__(self, n: int) -> int:
        return poly_eval(self, n)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return Polynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(tuple(other * c for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def format(self, compact: bool = False) -> str:
        return format_polynomial(self, compact=compact)

    def __str__(self) -> str:
        return format_polynomial(self)


ZERO = Polynomial()
ONE = Polynomial((1,))


def poly_eval(p: Polynomial, n: int) -> int:
    """Horner evaluation, exact."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * n + c
    return acc


def falling_factorial(w: int, shift: int = 0) -> Polynomial:
    """Expanded ``(n - shift)(n - shift - 1)...(n - shift - w + 1)``; constant 1 for ``w = 0``."""
    if w < 0 or shift < 0:
        raise ValueError("falling_factorial needs nonnegative w and shift")
    p = ONE
    for i in range(w):
        p = p * Polynomial((-(shift + i), 1))
    return p


def sign_stability_bound(p: Polynomial) -> int:
    """Cauchy bound: ``p(n)`` has the sign of its leading coefficient for all integers ``n >= N``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no leading coefficient")
    lead = abs(p.leading)
    rest = [abs(c) for c in p.coeffs[:-1]]
    if not rest:
        return 1
    m = max(rest)
    return 1 + -(-m // lead)


def integer_scaled(coeffs: Sequence[Fraction]) -> tuple[int, list[int]]:
    """Positive integer ``L`` and the integers ``L * c`` for the given rationals."""
    den = 1
    for c in coeffs:
        den = lcm(den, as_rational(c).denominator)
    return den, [int(as_rational(c) * den) for c in coeffs]


def rational_poly_bound(coeffs: Sequence[Fraction]) -> int | None:
    """Sign-stability bound for a polynomial with rational coefficients; None if it is zero."""
    _, ints = integer_scaled(coeffs)
    p = Polynomial(tuple(ints))
    if p.is_zero():
        return None
    return sign_stability_bound(p)


def _sup(k: int) -> str:
    return "" if k == 1 else f"^{k}"


def format_polynomial(p: Polynomial, compact: bool = False) -> str:
    """Textual form such as ``2n^2 - n + 3`` (``2n^2-n+3`` when compact)."""
    if p.is_zero():
        return "0"
    parts: list[tuple[str, str]] = []
    for deg in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[deg]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if deg == 0:
            body = str(a)
        else:
            body = ("" if a == 1 else str(a)) + "n" + _sup(deg)
        parts.append((sign, body))
    sep = "" if compact else " "
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f"{sep}{sign}{sep}{body}"
    return out


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of :func:`format_polynomial` (either spacing)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    terms: list[str] = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and not cur.endswith("^"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    acc: dict[int, int] = {}
    for t in terms:
        sign = -1 if t[0] == "-" else 1
        body = t[1:]
        if "n" in body:
            c_txt, _, exp_txt = body.partition("n")
            c = int(c_txt) if c_txt else 1
            deg = int(exp_txt[1:]) if exp_txt.startswith("^") else 1
            if exp_txt and not exp_txt.startswith("^"):
                raise ValueError(f"bad monomial {t!r}")
        else:
            c, deg = int(body), 0
        acc[deg] = acc.get(deg, 0) + sign * c
    top = max(acc) if acc else 0
    return Polynomial(tuple(acc.get(i, 0) for i in range(top + 1)))


def sum_polys(polys: Iterable[Polynomial]) -> Polynomial:
    out = ZERO
    for p in polys:
        out = out + p
    return out
