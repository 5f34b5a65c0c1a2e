"""Spinor bases on complete-graph edges and the n! alternating formula.

Every unordered edge {i,j} of the complete graph on n vertices carries an
ordered basis (p1, p2) of the degree-<=1 polynomials.  A choice c picks,
per edge, which basis element rides the oriented edge from i to j (i < j);
the other one always rides the reverse edge.  Vertex i then gets the
polynomial p_i = product of the spinors on its n-1 outgoing edges, and the
signed sum over all 2^C(n,2) choices of det(p_1,...,p_n) collapses:

    sum over c of sgn(c) * det(p^c_1,...,p^c_n)
        = n! * product over edges of det(p1, p2),

with sgn(c) = (-1)^{number of second-element picks}.  The all-first-element
choice is the base point; the formula is checked exactly, and the same sum
drives a search for a single nonzero assignment, which must exist whenever
every edge determinant is nonzero.

With every basis (1, t), a choice contributes iff the t-multiplicities of
the vertices are a permutation of 0..n-1, i.e. the induced orientation is
a transitive tournament; exactly n! choices survive, one per vertex order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Iterator

from .engine import (
    DEFAULT_TERM_BUDGET,
    MatrixTuple,
    MultilinearForm,
    partition_ranges,
)
from .errors import AltdetError, BudgetError, DimensionError
from .exact import Matrix, Polynomial, poly_det, poly_mul
from .perms import Shape

ONE = Polynomial((1, 0))
T = Polynomial((0, 1))


@lru_cache(maxsize=None)
def edge_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All edges {i,j}, i < j, in lexicographic order; bit b names edge b."""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def edge_index(n: int, i: int, j: int) -> int:
    """Position of edge (i, j), i < j, in the lexicographic edge order."""
    if not 0 <= i < j < n:
        raise DimensionError(f"not an edge of the order-{n} complete graph: ({i}, {j})")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class SpinorInstance:
    """An ordered basis of V_2 per edge, stored in lexicographic edge order."""

    n: int
    bases: tuple[tuple[Polynomial, Polynomial], ...]

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("spinor instances need n >= 1")
        expected = self.n * (self.n - 1) // 2
        if len(self.bases) != expected:
            raise DimensionError(f"order {self.n} needs {expected} edge bases, got {len(self.bases)}")
        for p1, p2 in self.bases:
            if p1.ambient != 2 or p2.ambient != 2:
                raise DimensionError("edge spinors must be degree-<=1 polynomials (ambient 2)")

    @classmethod
    def identity(cls, n: int) -> "SpinorInstance":
        """The all-(1, t) instance; every edge determinant is 1."""
        return cls(n, tuple((ONE, T) for _ in range(n * (n - 1) // 2)))

    @classmethod
    def from_edge_map(cls, n: int, mapping) -> "SpinorInstance":
        """Build from {(i, j): (p1, p2)} with 0-based i < j."""
        pairs = edge_pairs(n)
        missing = [e for e in pairs if e not in mapping]
        if missing or len(mapping) != len(pairs):
            raise DimensionError(f"edge map must cover exactly the {len(pairs)} edges, missing {missing}")
        return cls(n, tuple(tuple(mapping[e]) for e in pairs))

    @property
    def edge_count(self) -> int:
        return len(self.bases)

    def basis(self, i: int, j: int) -> tuple[Polynomial, Polynomial]:
        return self.bases[edge_index(self.n, i, j)]

    def edge_det(self, i: int, j: int) -> Fraction:
        """Determinant of the 2x2 coefficient matrix of the edge's basis."""
        p1, p2 = self.basis(i, j)
        return Fraction(p1.coeffs[0] * p2.coeffs[1] - p1.coeffs[1] * p2.coeffs[0])

    @cached_property
    def edge_dets(self) -> tuple[Fraction, ...]:
        return tuple(self.edge_det(i, j) for i, j in edge_pairs(self.n))

    @property
    def is_nonsingular(self) -> bool:
        return all(d != 0 for d in self.edge_dets)


@dataclass(frozen=True)
class Choice:
    """One bit per edge: 0 sends p1 along e_ij (i < j), 1 sends p2."""

    bits: int
    edge_count: int

    def __post_init__(self):
        if self.edge_count < 0:
            raise DimensionError("edge count must be >= 0")
        if not 0 <= self.bits < (1 << self.edge_count):
            raise DimensionError(f"bits {self.bits} out of range for {self.edge_count} edges")

    @classmethod
    def base(cls, n: int) -> "Choice":
        """The all-p1 choice, the even base point of the enumeration."""
        return cls(0, n * (n - 1) // 2)

    @property
    def sign(self) -> int:
        return -1 if self.bits.bit_count() % 2 else 1

    def bit(self, idx: int) -> int:
        return (self.bits >> idx) & 1

    def flip(self, idx: int) -> "Choice":
        return Choice(self.bits ^ (1 << idx), self.edge_count)


def enumerate_choices(edge_count: int, start: int = 0, stop: int | None = None) -> Iterator[Choice]:
    """Choices in reflected-binary order: consecutive ones differ in one bit."""
    total = 1 << edge_count
    if stop is None:
        stop = total
    start = max(start, 0)
    stop = min(stop, total)
    for t in range(start, stop):
        yield Choice(t ^ (t >> 1), edge_count)


@dataclass(frozen=True)
class ChoicePolynomials:
    """The n vertex polynomials a choice induces, each of degree < n."""

    polys: tuple[Polynomial, ...]

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)


def _spinor_on(inst: SpinorInstance, bits: int, v: int, u: int) -> Polynomial:
    """The basis element riding the oriented edge from v to u."""
    if v < u:
        p1, p2 = inst.bases[edge_index(inst.n, v, u)]
        return p2 if (bits >> edge_index(inst.n, v, u)) & 1 else p1
    p1, p2 = inst.bases[edge_index(inst.n, u, v)]
    return p1 if (bits >> edge_index(inst.n, u, v)) & 1 else p2


def _vertex_poly(inst: SpinorInstance, bits: int, v: int) -> Polynomial:
    """Product of the spinors on vertex v's outgoing edges, in V_n."""
    n = inst.n
    acc = Polynomial((1,) + (0,) * (n - 1))
    for u in range(n):
        if u != v:
            acc = poly_mul(acc, _spinor_on(inst, bits, v, u), n)
    return acc


def choice_polys(inst: SpinorInstance, c: Choice) -> ChoicePolynomials:
    """All n vertex polynomials of a choice, by one pass over the edges."""
    if c.edge_count != inst.edge_count:
        raise DimensionError(f"choice covers {c.edge_count} edges, instance has {inst.edge_count}")
    n = inst.n
    one = Polynomial((1,) + (0,) * (n - 1))
    acc = [one] * n
    for idx, (i, j) in enumerate(edge_pairs(n)):
        p1, p2 = inst.bases[idx]
        to_i, to_j = (p2, p1) if c.bit(idx) else (p1, p2)
        acc[i] = poly_mul(acc[i], to_i, n)
        acc[j] = poly_mul(acc[j], to_j, n)
    return ChoicePolynomials(tuple(acc))


def choice_det(inst: SpinorInstance, c: Choice) -> Fraction:
    """det of the coefficient matrix of the choice's vertex polynomials."""
    return poly_det(choice_polys(inst, c).polys)


def out_degrees(c: Choice, n: int) -> tuple[int, ...]:
    """Per-vertex count of second-basis-element ends, the orientation reading.

    On edge {i,j}, i < j, bit 0 hands the second element to j and bit 1
    hands it to i; with identity spinors the count is the degree of the
    vertex polynomial.
    """
    if c.edge_count != n * (n - 1) // 2:
        raise DimensionError(f"choice covers {c.edge_count} edges, order {n} has {n * (n - 1) // 2}")
    degs = [0] * n
    for idx, (i, j) in enumerate(edge_pairs(n)):
        if c.bit(idx):
            degs[i] += 1
        else:
            degs[j] += 1
    return tuple(degs)


@dataclass(frozen=True)
class SvrtanReport:
    """Both sides of the n! formula with the pieces they came from."""

    lhs: Fraction
    rhs: Fraction
    edge_determinants: tuple[Fraction, ...]
    term_count: int

    @property
    def verdict(self) -> bool:
        return self.lhs == self.rhs


def verify_svrtan(
    inst: SpinorInstance,
    *,
    threads: int = 1,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> SvrtanReport:
    """Check the n! formula on one instance, exactly.

    The choice space is split by rank range (equivalently bit prefix, the
    enumeration index being the reflected-binary rank); each worker sums
    its block exactly.
    """
    terms = 1 << inst.edge_count
    if terms > term_budget:
        raise BudgetError("choice space has too many terms", count=terms, budget=term_budget)

    def range_sum(lo: int, hi: int) -> Fraction:
        total = Fraction(0)
        for c in enumerate_choices(inst.edge_count, lo, hi):
            d = choice_det(inst, c)
            if d:
                total += c.sign * d
        return total

    ranges = partition_ranges(terms, threads)
    if len(ranges) == 1:
        lhs = range_sum(0, terms)
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            lhs = sum(pool.map(lambda r: range_sum(r[0], r[1]), ranges), Fraction(0))
    rhs = Fraction(factorial(inst.n))
    for d in inst.edge_dets:
        rhs *= d
    return SvrtanReport(
        lhs=lhs, rhs=rhs, edge_determinants=inst.edge_dets, term_count=terms
    )


def nonzero_term_census(n: int, *, term_budget: int = DEFAULT_TERM_BUDGET) -> int:
    """Number of surviving choices for identity spinors; always n!.

    Every survivor must read as a transitive tournament: its per-vertex
    degree counts are a permutation of 0..n-1.  A survivor failing that
    would falsify the tournament argument, so it raises.
    """
    inst = SpinorInstance.identity(n)
    terms = 1 << inst.edge_count
    if terms > term_budget:
        raise BudgetError("choice space has too many terms", count=terms, budget=term_budget)
    count = 0
    marks = list(range(n))
    for c in enumerate_choices(inst.edge_count):
        if choice_det(inst, c) != 0:
            count += 1
            if sorted(out_degrees(c, n)) != marks:
                raise AltdetError(
                    f"nonzero term with non-transitive orientation: bits {c.bits:b}"
                )
    return count


def svrtan_search(
    inst: SpinorInstance,
    *,
    incremental: bool = False,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> Choice | None:
    """First choice with a nonzero determinant, walking one bit at a time.

    None only comes back for singular instances; otherwise the formula
    guarantees a nonzero term.  The incremental path refreshes just the two
    vertex polynomials an edge flip touches and is checked against the
    plain path by tests.
    """
    E = inst.edge_count
    if (1 << E) > term_budget:
        raise BudgetError("choice space has too many terms", count=1 << E, budget=term_budget)
    if not incremental:
        for c in enumerate_choices(E):
            if choice_det(inst, c) != 0:
                return c
        return None
    n = inst.n
    bits = 0
    polys = [_vertex_poly(inst, bits, v) for v in range(n)]
    for t in range(1 << E):
        if t:
            idx = (t & -t).bit_length() - 1
            bits ^= 1 << idx
            i, j = edge_pairs(n)[idx]
            polys[i] = _vertex_poly(inst, bits, i)
            polys[j] = _vertex_poly(inst, bits, j)
        if poly_det(polys) != 0:
            return Choice(bits, E)
    return None


def as_engine_instance(inst: SpinorInstance) -> tuple[MultilinearForm, MatrixTuple]:
    """Recast as a form and matrix tuple of shape (2,...,2), one per edge.

    Each edge contributes its 2x2 coefficient matrix, columns p1 then p2;
    the form evaluates the base-choice determinant of whatever bases the
    (possibly column-swapped) matrices carry.  Column swaps are exactly bit
    flips with matching signs, so the general alternating sum over this
    pair reproduces the choice sum term by term, and the identity-matrix
    invariant is n!.
    """
    n = inst.n
    if n < 2:
        raise DimensionError("the engine recast needs n >= 2 (at least one edge)")
    pairs = edge_pairs(n)
    matrices = tuple(
        Matrix.from_columns([p1.coeffs, p2.coeffs]) for p1, p2 in inst.bases
    )
    shape = Shape.of(*([2] * len(pairs)))

    def evaluate(A: MatrixTuple):
        acc = [Polynomial((1,) + (0,) * (n - 1))] * n
        for idx, (i, j) in enumerate(pairs):
            m = A.matrices[idx]
            to_i = Polynomial(m.column(0))
            to_j = Polynomial(m.column(1))
            acc[i] = poly_mul(acc[i], to_i, n)
            acc[j] = poly_mul(acc[j], to_j, n)
        return poly_det(acc)

    form = MultilinearForm(shape, evaluate, f"spinor base-choice det, n={n}")
    return form, MatrixTuple(shape, matrices)
