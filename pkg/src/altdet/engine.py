"""Multilinear forms on matrix tuples and their alternating column sums.

The central quantity is sum over sigma of sgn(sigma) * f(sigma^-1 . A),
where sigma runs over the product of the column-permutation groups of the
matrices.  Because inversion is a sign-preserving bijection of the group,
the implementation reindexes and sums sgn(sigma) * f(sigma . A) instead;
a unit test pins the equivalence against the literal inverse form.

For every form f the sum factors as a scalar, depending on f and the shape
alone, times the product of the matrix determinants.  That scalar is
recovered by running the same sum with every matrix set to the identity,
and `verify_identity` checks the factorization exactly on given inputs.

Enumeration is splittable by rank range, so the sum can be partitioned
across workers deterministically; partial sums are exact rationals and the
combined result is independent of the partition.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Sequence

from .errors import BudgetError, DimensionError
from .exact import Matrix, Scalar, det
from .perms import Shape, act, enumerate_product

DEFAULT_TERM_BUDGET = 10**8


@dataclass(frozen=True)
class MatrixTuple:
    """A tuple of square matrices, one per shape factor."""

    shape: Shape
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.matrices) != self.shape.k:
            raise DimensionError(
                f"shape has {self.shape.k} factors but {len(self.matrices)} matrices given"
            )
        for size, m in zip(self.shape.sizes, self.matrices):
            if m.rows != size or m.cols != size:
                raise DimensionError(f"expected a {size}x{size} matrix, got {m.rows}x{m.cols}")

    @classmethod
    def of(cls, matrices: Iterable[Matrix]) -> "MatrixTuple":
        ms = tuple(matrices)
        return cls(Shape(tuple(m.rows for m in ms)), ms)

    @classmethod
    def identity(cls, shape: Shape) -> "MatrixTuple":
        return cls(shape, tuple(Matrix.identity(s) for s in shape))

    @cached_property
    def determinants(self) -> tuple[Fraction, ...]:
        return tuple(det(m) for m in self.matrices)

    @property
    def is_nonsingular(self) -> bool:
        """True when every factor determinant is nonzero."""
        return all(d != 0 for d in self.determinants)


class MultilinearForm:
    """A scalar function of a matrix tuple, linear in each column slot.

    The evaluator must be pure: workers may call it concurrently on
    different permuted copies of the same tuple.
    """

    def __init__(
        self,
        shape: Shape,
        evaluator: Callable[[MatrixTuple], Scalar],
        description: str = "",
    ):
        self.shape = shape
        self.evaluator = evaluator
        self.description = description

    def __call__(self, A: MatrixTuple) -> Scalar:
        return self.evaluator(A)

    def __repr__(self) -> str:
        return f"MultilinearForm({self.shape.sizes}, {self.description!r})"


class DenseTensorForm(MultilinearForm):
    """A form given by explicit coefficients, one covector index per column.

    Slots run block by block, columns within a block in order, so a shape
    (n_1,...,n_k) has n_1 + ... + n_k slots and the coefficient array holds
    prod n_i**n_i entries in row-major order, last slot fastest.  The slot
    for column j of matrix i with index r selects entry (r, j) of that
    matrix, and the value is the coefficient-weighted sum of all entry
    products.
    """

    def __init__(self, shape: Shape, coeffs: Sequence[Scalar], description: str = "dense tensor"):
        slots = [(i, j) for i, n in enumerate(shape.sizes) for j in range(n)]
        size = 1
        for i, _ in slots:
            size *= shape.sizes[i]
        if len(coeffs) != size:
            raise DimensionError(f"shape {shape.sizes} needs {size} coefficients, got {len(coeffs)}")
        self.coeffs = tuple(coeffs)
        self._slots = slots
        super().__init__(shape, self._evaluate, description)

    def _evaluate(self, A: MatrixTuple) -> Scalar:
        cols = [A.matrices[i].column(j) for i, j in self._slots]
        total: Scalar = 0
        for coeff, picks in zip(self.coeffs, product(*cols)):
            if coeff:
                term = coeff
                for entry in picks:
                    term = term * entry
                total = total + term
        return total


def partition_ranges(length: int, parts: int) -> list[tuple[int, int]]:
    """Split [0, length) into at most ``parts`` contiguous balanced ranges."""
    parts = max(1, min(parts, length)) if length > 0 else 1
    bounds = [length * i // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]


def _range_sum(f: MultilinearForm, A: MatrixTuple, start: int, stop: int) -> Fraction:
    total = Fraction(0)
    for sigma in enumerate_product(A.shape, start, stop):
        value = f(act(sigma, A))
        if value:
            total += sigma.parity * value
    return total


def alternating_sum(
    f: MultilinearForm,
    A: MatrixTuple,
    *,
    threads: int = 1,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> Fraction:
    """Exact value of the signed sum of f over all column permutations of A."""
    if f.shape != A.shape:
        raise DimensionError(f"form shape {f.shape.sizes} != tuple shape {A.shape.sizes}")
    terms = A.shape.term_count
    if terms > term_budget:
        raise BudgetError("alternating sum has too many terms", count=terms, budget=term_budget)
    ranges = partition_ranges(terms, threads)
    if len(ranges) == 1:
        return _range_sum(f, A, 0, terms)
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        partials = pool.map(lambda r: _range_sum(f, A, r[0], r[1]), ranges)
        return sum(partials, Fraction(0))


def invariant_at_identity(
    f: MultilinearForm, *, threads: int = 1, term_budget: int = DEFAULT_TERM_BUDGET
) -> Fraction:
    """The scalar the alternating sum contributes beyond the determinants.

    Evaluating the sum at the all-identity tuple isolates it, since every
    determinant is then 1.
    """
    return alternating_sum(
        f, MatrixTuple.identity(f.shape), threads=threads, term_budget=term_budget
    )


@dataclass(frozen=True)
class IdentityReport:
    """Both sides of the factorization, with the pieces they came from."""

    lhs: Fraction
    rhs: Fraction
    invariant: Fraction
    determinants: tuple[Fraction, ...]
    term_count: int

    @property
    def verdict(self) -> bool:
        return self.lhs == self.rhs


def verify_identity(
    f: MultilinearForm,
    A: MatrixTuple,
    *,
    threads: int = 1,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> IdentityReport:
    """Check alternating sum = invariant * product of determinants, exactly."""
    lhs = alternating_sum(f, A, threads=threads, term_budget=term_budget)
    inv = invariant_at_identity(f, threads=threads, term_budget=term_budget)
    rhs = inv
    for d in A.determinants:
        rhs *= d
    return IdentityReport(
        lhs=lhs,
        rhs=rhs,
        invariant=inv,
        determinants=A.determinants,
        term_count=A.shape.term_count,
    )
