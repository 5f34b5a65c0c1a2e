"""Exact rational scalars, dense matrices and one-variable polynomials.

Scalars are plain ``int`` or ``fractions.Fraction`` values; both are exact
and mix freely in arithmetic.  Functions that return a scalar always return
a ``Fraction`` in canonical form (reduced, positive denominator).  The text
format for scalars is an optional sign, a decimal integer, and an optional
``/`` followed by a positive decimal denominator: ``"-3/7"``, ``"4"``.

Matrices are immutable and stored row-major as nested tuples.  Determinants
use fraction-free Bareiss elimination: each column is scaled by the least
common multiple of its denominators (the scale is tracked and divided out
at the end), after which the elimination runs entirely over integers.

Polynomials are dense coefficient tuples; index ``d`` holds the coefficient
of ``t**d``.  A polynomial lives in the space of polynomials of degree < m
exactly when its tuple has length m.  The zero polynomial is an all-zero
tuple; its degree is undefined and never queried.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import DimensionError, InputError

Scalar = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse the exact text format ("-3/7", "4") into a canonical Fraction."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise InputError(f"bad rational literal {text!r}: expected e.g. '4' or '-3/7'")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise InputError(f"bad rational literal {text!r}: zero denominator")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Scalar) -> str:
    """Canonical text for a scalar; round-trips exactly through parse_rational."""
    return str(Fraction(value))


@dataclass(frozen=True)
class Matrix:
    """Immutable matrix over the rationals, entries stored as rows of tuples."""

    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionError("matrix must have at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise DimensionError("matrix rows must all have the same length")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Scalar]]) -> "Matrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> "Matrix":
        return cls(tuple(zip(*columns)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Scalar, ...]]:
        cols = list(zip(*self.entries))
        return cols

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions do not match")
        cols = other.columns()
        return Matrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.entries
            )
        )

    def __str__(self) -> str:
        return "\n".join(" ".join(format_rational(x) for x in row) for row in self.entries)


def _int_det(a: list[list[int]]) -> int:
    """Bareiss elimination on an integer matrix, destroying ``a``."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                # exact integer division, guaranteed by the Bareiss identity
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[-1][-1]


def det(m: Matrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if not m.is_square:
        raise DimensionError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    scales = [lcm(*(row[j].denominator for row in m.entries)) for j in range(n)]
    grid = [
        [x.numerator * (scales[j] // x.denominator) for j, x in enumerate(row)]
        for row in m.entries
    ]
    value = _int_det(grid)
    scale = 1
    for s in scales:
        scale *= s
    return Fraction(value, scale)


def det_int_rows(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an all-integer square grid, for hot enumeration loops."""
    return _int_det([list(row) for row in rows])


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in one variable; coeffs[d] is the t**d coefficient."""

    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DimensionError("polynomial needs a coefficient tuple of length >= 1")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> "Polynomial":
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, ambient: int) -> "Polynomial":
        return cls((0,) * ambient)

    @property
    def ambient(self) -> int:
        """Length of the coefficient tuple, the m of the space it lives in."""
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def degree(self) -> int:
        for d in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[d] != 0:
                return d
        raise ValueError("the zero polynomial has no degree")

    def embed(self, ambient: int) -> "Polynomial":
        """Re-embed into degree-< ambient space, padding or trimming zeros."""
        if ambient >= len(self.coeffs):
            return Polynomial(self.coeffs + (0,) * (ambient - len(self.coeffs)))
        if any(c != 0 for c in self.coeffs[ambient:]):
            raise DimensionError(f"polynomial of degree {self.degree} does not fit in V_{ambient}")
        return Polynomial(self.coeffs[:ambient])

    def __call__(self, t: Scalar) -> Scalar:
        value = 0
        for c in reversed(self.coeffs):
            value = value * t + c
        return value

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                terms.append(format_rational(c))
            else:
                base = "t" if d == 1 else f"t^{d}"
                terms.append(base if c == 1 else f"{format_rational(c)}*{base}")
        return " + ".join(terms) if terms else "0"


def poly_mul(a: Polynomial, b: Polynomial, ambient: int) -> Polynomial:
    """Exact product of two polynomials, embedded in the degree-< ambient space.

    The product must fit: deg(a) + deg(b) < ambient, unless either factor is
    zero, in which case the result is the zero polynomial of the ambient space.
    """
    if a.is_zero or b.is_zero:
        return Polynomial.zero(ambient)
    da, db = a.degree, b.degree
    if da + db >= ambient:
        raise DimensionError(
            f"product degree {da + db} does not fit in V_{ambient} (degree < {ambient})"
        )
    out = [0] * ambient
    for i in range(da + 1):
        ca = a.coeffs[i]
        if ca == 0:
            continue
        for j in range(db + 1):
            out[i + j] += ca * b.coeffs[j]
    return Polynomial(tuple(out))


def poly_det(ps: Sequence[Polynomial]) -> Fraction:
    """Determinant of the coefficient matrix of n polynomials in V_n.

    Column i is the coefficient vector of ps[i]; row d holds the t**d
    coefficients.  Nonzero exactly when the polynomials are linearly
    independent.
    """
    n = len(ps)
    if n == 0:
        raise DimensionError("poly_det needs at least one polynomial")
    for p in ps:
        if p.ambient != n:
            raise DimensionError(f"expected ambient {n}, got a polynomial with {p.ambient} coefficients")
    rows = tuple(tuple(p.coeffs[d] for p in ps) for d in range(n))
    return det(Matrix(rows))
