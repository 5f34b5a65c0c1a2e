"""Colorful determinant products, signed Latin-square counts, transversal search.

The colorful form of order n takes n matrices of size n and multiplies the
determinants assembled from the j-th column of each matrix, j = 1..n.  Its
identity-matrix invariant equals the signed Latin-square count l(n): the
number of even order-n squares minus the number of odd ones.  That gives
the specialized identity

    sum over sigma tuples of sgn(sigma) * prod_j det(j-th transversal)
        = l(n) * det(1A) * ... * det(nA),

which this module checks directly, and which powers the transversal search:
whenever l(n) != 0 and every matrix is nonsingular, some term on the left
is nonzero, so a full selection of disjoint nonzero transversals exists.

Two independent routes compute l(n): full cell-by-cell enumeration of Latin
squares with an incrementally maintained sign, and the engine's invariant
of the colorful form.  Tests require them to agree, which also pins the
sign convention for a square (product of the signs of all rows and all
columns read as permutations).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator

from .engine import DEFAULT_TERM_BUDGET, MatrixTuple, MultilinearForm, partition_ranges
from .errors import BudgetError, DimensionError, InputError
from .exact import Matrix, det
from .perms import Shape, SignedPerm, SignedPermTuple, enumerate_signed, _pool

DEFAULT_NODE_BUDGET = 10**7
MAX_FULL_ORDER = 7


@dataclass(frozen=True)
class LatinSquare:
    """An n x n grid whose rows and columns each permute {0..n-1}."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.grid)
        if n == 0 or any(len(row) != n for row in self.grid):
            raise DimensionError("a Latin square needs a nonempty square grid")
        marks = list(range(n))
        for row in self.grid:
            if sorted(row) != marks:
                raise InputError(f"row {row!r} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if sorted(row[j] for row in self.grid) != marks:
                raise InputError(f"column {j} is not a permutation of 0..{n - 1}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "LatinSquare":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.grid)

    @property
    def transpose(self) -> "LatinSquare":
        return LatinSquare(tuple(zip(*self.grid)))


def latin_sign(square: LatinSquare) -> int:
    """Product of the signs of all n rows and all n columns as permutations."""
    sign = 1
    for row in square.grid:
        sign *= SignedPerm.from_mapping(row).parity
    for col in zip(*square.grid):
        sign *= SignedPerm.from_mapping(col).parity
    return sign


def latin_squares(n: int) -> Iterator[LatinSquare]:
    """All order-n Latin squares, cells filled row-major with values ascending."""
    if n < 1:
        raise DimensionError("Latin squares need order >= 1")
    full = (1 << n) - 1
    cols = [0] * n
    grid = [[0] * n for _ in range(n)]

    def fill(r: int, c: int, row_mask: int) -> Iterator[LatinSquare]:
        if c == n:
            if r + 1 == n:
                yield LatinSquare.from_rows(grid)
            else:
                yield from fill(r + 1, 0, 0)
            return
        avail = full & ~row_mask & ~cols[c]
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            grid[r][c] = v
            cols[c] |= bit
            yield from fill(r, c + 1, row_mask | bit)
            cols[c] ^= bit

    yield from fill(0, 0, 0)


def _signed_completions(n: int, cols: list[int], start_row: int, sign: int) -> int:
    """Signed count of ways to finish rows start_row..n-1 given column masks.

    Placing value v at (r, c) adds one inversion to row r for each larger
    value already in the row, and to column c for each larger value already
    in the column; both live in the masks, so the sign update is two
    popcounts.
    """
    if start_row == n:
        return sign
    full = (1 << n) - 1
    total = 0

    def fill(r: int, c: int, row_mask: int, sign: int):
        nonlocal total
        if c == n:
            if r + 1 == n:
                total += sign
            else:
                fill(r + 1, 0, 0, sign)
            return
        avail = full & ~row_mask & ~cols[c]
        while avail:
            bit = avail & -avail
            avail ^= bit
            v = bit.bit_length() - 1
            flips = (row_mask >> (v + 1)).bit_count() + (cols[c] >> (v + 1)).bit_count()
            cols[c] |= bit
            fill(r, c + 1, row_mask | bit, -sign if flips & 1 else sign)
            cols[c] ^= bit

    fill(start_row, 0, 0, sign)
    return total


def alon_tarsi_count(n: int, *, threads: int = 1) -> int:
    """l(n): even minus odd order-n Latin squares, by full enumeration.

    Workers split the choice of first row by rank range; each then runs the
    masked DFS over the remaining rows with the sign maintained in place.
    """
    if n < 1:
        raise DimensionError("Latin squares need order >= 1")
    if n > MAX_FULL_ORDER:
        raise BudgetError(f"full enumeration is capped at order {MAX_FULL_ORDER}, got {n}")

    def over_first_rows(lo: int, hi: int) -> int:
        subtotal = 0
        for first in enumerate_signed(n, lo, hi):
            # first row: its own sign, no column inversions yet
            cols = [1 << v for v in first.mapping]
            subtotal += _signed_completions(n, cols, 1, first.parity)
        return subtotal

    ranges = partition_ranges(factorial(n), threads)
    if len(ranges) == 1:
        return over_first_rows(0, factorial(n))
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        return sum(pool.map(lambda r: over_first_rows(r[0], r[1]), ranges))


@dataclass(frozen=True)
class ColorfulInstance:
    """n square matrices of size n, the inputs of the colorful identity."""

    n: int
    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("colorful instances need n >= 1")
        if len(self.matrices) != self.n:
            raise DimensionError(f"expected {self.n} matrices, got {len(self.matrices)}")
        for m in self.matrices:
            if m.rows != self.n or m.cols != self.n:
                raise DimensionError(f"expected {self.n}x{self.n} matrices, got {m.rows}x{m.cols}")

    @classmethod
    def of(cls, matrices: Iterable[Matrix]) -> "ColorfulInstance":
        ms = tuple(matrices)
        return cls(len(ms), ms)

    def as_matrix_tuple(self) -> MatrixTuple:
        return MatrixTuple(Shape.of(*([self.n] * self.n)), self.matrices)

    @property
    def determinants(self) -> tuple[Fraction, ...]:
        return tuple(det(m) for m in self.matrices)

    @property
    def is_nonsingular(self) -> bool:
        return all(d != 0 for d in self.determinants)


def colorful_form(n: int) -> MultilinearForm:
    """The order-n form: product over j of det(column j of each matrix).

    Assembled determinants repeat heavily across permuted evaluations, so
    they are memoized on the tuple of chosen columns.
    """
    if n < 1:
        raise DimensionError("colorful forms need n >= 1")
    memo: dict[tuple, Fraction] = {}

    def evaluate(A: MatrixTuple):
        value: Fraction | int = 1
        for j in range(n):
            picked = tuple(m.column(j) for m in A.matrices)
            d = memo.get(picked)
            if d is None:
                d = det(Matrix.from_columns(picked))
                memo[picked] = d
            if not d:
                return 0
            value *= d
        return value

    return MultilinearForm(Shape.of(*([n] * n)), evaluate, f"colorful order {n}")


@dataclass(frozen=True)
class OnnReport:
    """Both sides of the colorful identity with the pieces they came from."""

    lhs: Fraction
    rhs: Fraction
    latin_count: int
    determinants: tuple[Fraction, ...]
    term_count: int

    @property
    def verdict(self) -> bool:
        return self.lhs == self.rhs


def _transversal_det_table(inst: ColorfulInstance) -> list:
    """Determinant of every possible assembled transversal, flat-indexed.

    Index encodes the chosen column of each matrix in base n, matrix 1 most
    significant.  Size n**n; at n = 4 that is 256 determinants, after which
    the alternating sum is pure table lookups.
    """
    n = inst.n
    cols = [m.columns() for m in inst.matrices]
    table: list = []
    picks = [0] * n

    def build(i: int):
        if i == n:
            table.append(det(Matrix.from_columns([cols[k][picks[k]] for k in range(n)])))
            return
        for c in range(n):
            picks[i] = c
            build(i + 1)

    build(0)
    if all(d.denominator == 1 for d in table):
        return [int(d) for d in table]
    return table


def _onn_partial(n: int, table: list, first_lo: int, first_hi: int):
    """Signed sum over tuples whose first factor rank lies in [lo, hi).

    Each level extends the per-position table keys by Horner steps; a zero
    determinant at any position kills the term.
    """
    pool = _pool(n)
    total = 0

    def descend(level: int, sign: int, keys: tuple[int, ...]):
        nonlocal total
        if level == n:
            prod = 1
            for k in keys:
                d = table[k]
                if not d:
                    return
                prod *= d
            total += sign * prod
            return
        lo, hi = (first_lo, first_hi) if level == 0 else (0, len(pool))
        for p in pool[lo:hi]:
            m = p.mapping
            descend(level + 1, sign * p.parity, tuple(k * n + m[j] for j, k in enumerate(keys)))

    descend(0, 1, (0,) * n)
    return total


def verify_onn(
    inst: ColorfulInstance,
    *,
    threads: int = 1,
    term_budget: int = DEFAULT_TERM_BUDGET,
    latin_count: int | None = None,
) -> OnnReport:
    """Check the colorful identity on one instance, exactly.

    The left side sums (n!)**n signed products of transversal determinants;
    the right side is l(n) times the product of the matrix determinants.
    Pass ``latin_count`` to reuse a precomputed l(n).
    """
    n = inst.n
    terms = factorial(n) ** n
    if terms > term_budget:
        raise BudgetError("colorful alternating sum has too many terms", count=terms, budget=term_budget)
    table = _transversal_det_table(inst)
    ranges = partition_ranges(factorial(n), threads)
    if len(ranges) == 1:
        lhs_raw = _onn_partial(n, table, 0, factorial(n))
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            lhs_raw = sum(pool.map(lambda r: _onn_partial(n, table, r[0], r[1]), ranges))
    lhs = Fraction(lhs_raw)
    if latin_count is None:
        latin_count = alon_tarsi_count(n, threads=threads)
    rhs = Fraction(latin_count)
    for d in inst.determinants:
        rhs *= d
    return OnnReport(
        lhs=lhs,
        rhs=rhs,
        latin_count=latin_count,
        determinants=inst.determinants,
        term_count=terms,
    )


@dataclass(frozen=True)
class TransversalSelection:
    """A full selection: sigma_i(j) names the column of matrix i used at j."""

    sigma: SignedPermTuple

    @property
    def n(self) -> int:
        return self.sigma.parts[0].n

    def transversals(self, inst: ColorfulInstance) -> list[Matrix]:
        """The n assembled matrices; the j-th uses column sigma_i(j) of matrix i."""
        if inst.n != self.n or len(self.sigma.parts) != inst.n:
            raise DimensionError("selection does not match the instance")
        return [
            Matrix.from_columns([m.column(part.mapping[j]) for part, m in zip(self.sigma.parts, inst.matrices)])
            for j in range(inst.n)
        ]

    def transversal_determinants(self, inst: ColorfulInstance) -> list[Fraction]:
        return [det(t) for t in self.transversals(inst)]

    def is_valid_for(self, inst: ColorfulInstance) -> bool:
        """True when every assembled transversal determinant is nonzero."""
        return all(d != 0 for d in self.transversal_determinants(inst))


def rota_search(
    inst: ColorfulInstance, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> TransversalSelection | None:
    """First full selection of disjoint nonzero transversals, or None.

    Positions are handled in order; within a position, column indices are
    tried ascending for matrix 1, then matrix 2, and so on, and a combo is
    kept only if its assembled determinant is nonzero.  Each determinant
    test costs one node against the budget.  None means the whole tree was
    exhausted, which the identity rules out for nonsingular instances with
    l(n) != 0.
    """
    n = inst.n
    cols = [m.columns() for m in inst.matrices]
    used = [[False] * n for _ in range(n)]
    sel = [[0] * n for _ in range(n)]
    nodes = 0

    def position(j: int) -> bool:
        return j == n or choose(j, 0, [])

    def choose(j: int, i: int, picked: list) -> bool:
        nonlocal nodes
        if i == n:
            nodes += 1
            if nodes > node_budget:
                raise BudgetError("transversal search hit the node cap", count=nodes, budget=node_budget)
            if det(Matrix.from_columns(picked)) == 0:
                return False
            return position(j + 1)
        for c in range(n):
            if not used[i][c]:
                used[i][c] = True
                sel[i][j] = c
                if choose(j, i + 1, picked + [cols[i][c]]):
                    return True
                used[i][c] = False
        return False

    if not position(0):
        return None
    parts = tuple(SignedPerm.from_mapping(sel[i]) for i in range(n))
    return TransversalSelection(SignedPermTuple.of(parts))
