"""Integer normal forms: Smith normal form, row Hermite form, integral solves.

Everything here works on plain nested lists of Python ints, so entries are
arbitrary precision. The Smith reduction is deterministic: the pivot is always
the nonzero entry of minimal absolute value, first in row-major order.

Usage:
    from src.lattice.normal_form import snf

    dec = snf([[4, 0, 0], [0, 0, -1], [0, -1, 0]])
    dec.d        # [1, 1, 4]
    dec.left     # unimodular, left * A * right == diag(d)
"""

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from ..utils.logger import get_logger

logger = get_logger(__name__)

IntMatrix = list[list[int]]


# =============================================================================
# MATRIX HELPERS
# =============================================================================

def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Matrix product; shapes (m x k) and (k x n)."""
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(cols)]
            for i in range(len(a))]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v: Sequence, a: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not a:
        return []
    return [sum(v[i] * a[i][j] for i in range(len(a))) for j in range(len(a[0]))]


def content(values: Sequence[int]) -> int:
    """gcd of all entries (0 for the zero vector)."""
    return gcd(*values) if values else 0


def diagonal(d: Sequence[int], rows: int, cols: int) -> IntMatrix:
    out = [[0] * cols for _ in range(rows)]
    for i, x in enumerate(d):
        out[i][i] = x
    return out


# =============================================================================
# SMITH NORMAL FORM
# =============================================================================

@dataclass(frozen=True)
class SnfDecomposition:
    """Result of a Smith normal form reduction: left * A * right = diag(d)."""

    d: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)

    @property
    def nontrivial(self) -> list[int]:
        """Indices of invariant factors greater than 1."""
        return [i for i, x in enumerate(self.d) if x > 1]

    def diagonal_matrix(self) -> IntMatrix:
        return diagonal(self.d, *self.shape)


class _SmithReduction:
    """Row/column reduction of a copy of A, tracking both transforms."""

    def __init__(self, matrix: Sequence[Sequence[int]]):
        self.a = [list(map(int, row)) for row in matrix]
        self.m = len(self.a)
        self.n = len(self.a[0]) if self.m else 0
        self.left = identity(self.m)
        self.right = identity(self.n)

    # --- elementary operations -------------------------------------------------

    def swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.left[i], self.left[j] = self.left[j], self.left[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            for row in self.right:
                row[i], row[j] = row[j], row[i]

    def add_row(self, target: int, source: int, k: int) -> None:
        """row[target] += k * row[source]"""
        if k:
            self.a[target] = [x + k * y for x, y in zip(self.a[target], self.a[source])]
            self.left[target] = [x + k * y for x, y in zip(self.left[target], self.left[source])]

    def add_col(self, target: int, source: int, k: int) -> None:
        """col[target] += k * col[source]"""
        if k:
            for row in self.a:
                row[target] += k * row[source]
            for row in self.right:
                row[target] += k * row[source]

    def negate_row(self, i: int) -> None:
        self.a[i] = [-x for x in self.a[i]]
        self.left[i] = [-x for x in self.left[i]]

    # --- reduction -------------------------------------------------------------

    def _min_entry(self, t: int) -> Optional[tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                x = self.a[i][j]
                if x and (best is None or abs(x) < abs(self.a[best[0]][best[1]])):
                    best = (i, j)
        return best

    def _min_in_cross(self, t: int) -> tuple[int, int]:
        """Smallest nonzero entry in row t / column t (from index t on)."""
        candidates = [(i, t) for i in range(t, self.m) if self.a[i][t]]
        candidates += [(t, j) for j in range(t + 1, self.n) if self.a[t][j]]
        return min(candidates, key=lambda ij: abs(self.a[ij[0]][ij[1]]))

    def _place(self, i: int, j: int, t: int) -> None:
        self.swap_rows(t, i)
        self.swap_cols(t, j)

    def run(self) -> None:
        for t in range(min(self.m, self.n)):
            start = self._min_entry(t)
            if start is None:
                break
            self._place(*start, t)
            while True:
                pivot = self.a[t][t]
                clean = True
                for i in range(t + 1, self.m):
                    self.add_row(i, t, -(self.a[i][t] // pivot))
                    clean = clean and self.a[i][t] == 0
                for j in range(t + 1, self.n):
                    self.add_col(j, t, -(self.a[t][j] // pivot))
                    clean = clean and self.a[t][j] == 0
                if not clean:
                    self._place(*self._min_in_cross(t), t)
                    continue
                bad = next(
                    (i for i in range(t + 1, self.m)
                     for j in range(t + 1, self.n) if self.a[i][j] % pivot),
                    None,
                )
                if bad is None:
                    break
                # pull the offending row up; the next pass shrinks the pivot
                self.add_row(t, bad, 1)
            if self.a[t][t] < 0:
                self.negate_row(t)


def snf(matrix: Sequence[Sequence[int]]) -> SnfDecomposition:
    """Smith normal form with unimodular transforms.

    Args:
        matrix: Any integer matrix (m x n), possibly empty

    Returns:
        SnfDecomposition with left * matrix * right == diag(d), d non-negative
        and d[i] | d[i+1] (zeros last)
    """
    red = _SmithReduction(matrix)
    red.run()
    d = tuple(red.a[i][i] for i in range(min(red.m, red.n)))
    logger.debug("snf %dx%d -> %s", red.m, red.n, d)
    return SnfDecomposition(
        d=d,
        left=tuple(tuple(r) for r in red.left),
        right=tuple(tuple(r) for r in red.right),
        shape=(red.m, red.n),
    )


# =============================================================================
# HERMITE FORM AND SOLVES
# =============================================================================

def hermite_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Canonical row-echelon basis of the Z-span of ``rows``.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), and zero rows are dropped. Two generating sets of the same
    lattice give identical output.
    """
    work = [list(map(int, r)) for r in rows]
    if not work:
        return []
    n = len(work[0])
    r = 0
    for col in range(n):
        if r >= len(work):
            break
        while True:
            nonzero = [i for i in range(r, len(work)) if work[i][col]]
            if not nonzero:
                break
            i_min = min(nonzero, key=lambda i: (abs(work[i][col]), i))
            work[r], work[i_min] = work[i_min], work[r]
            done = True
            for i in range(r + 1, len(work)):
                if work[i][col]:
                    q = work[i][col] // work[r][col]
                    work[i] = [x - q * y for x, y in zip(work[i], work[r])]
                    done = done and work[i][col] == 0
            if done:
                break
        if work[r][col] == 0:
            continue
        if work[r][col] < 0:
            work[r] = [-x for x in work[r]]
        for i in range(r):
            q = work[i][col] // work[r][col]
            if q:
                work[i] = [x - q * y for x, y in zip(work[i], work[r])]
        r += 1
    return [row for row in work[:r]]


def kernel_basis(matrix: Sequence[Sequence[int]], n_cols: int) -> IntMatrix:
    """Basis (as rows) of {x in Z^n : matrix x = 0}; always saturated."""
    if not matrix:
        return identity(n_cols)
    dec = snf(matrix)
    return hermite_rows([[dec.right[i][j] for i in range(n_cols)]
                         for j in range(dec.rank, n_cols)])


def solve_integer(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[list[int]]:
    """One integral solution x of matrix x = rhs, or None if there is none."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if m == 0:
        return [0] * n
    dec = snf(matrix)
    c = mat_vec(dec.left, rhs)
    y = [0] * n
    for i in range(m):
        di = dec.d[i] if i < len(dec.d) else 0
        if di == 0:
            if c[i] != 0:
                return None
        elif c[i] % di:
            return None
        else:
            y[i] = c[i] // di
    return mat_vec(dec.right, y)


__all__ = [
    "SnfDecomposition",
    "snf",
    "hermite_rows",
    "kernel_basis",
    "solve_integer",
    "identity",
    "transpose",
    "mat_mul",
    "mat_vec",
    "vec_mat",
    "content",
    "diagonal",
]
