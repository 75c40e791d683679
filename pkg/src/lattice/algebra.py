"""Exact linear algebra engine using sympy.

This module wraps the sympy calls the lattice code depends on, so that
every determinant, inverse, rank and rational solve goes through one place.

Why use sympy?
- Exact integer/rational arithmetic (no floating point anywhere)
- Fraction-free Bareiss determinants for large Gram matrices
- An independent invariant-factor implementation to cross-check our SNF
"""

from fractions import Fraction
from typing import Optional, Sequence

import sympy
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors
from sympy.polys.domains import ZZ

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def _to_fraction(value) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


class ExactLinearAlgebra:
    """Exact linear algebra wrapping sympy.

    All inputs are plain nested lists of ``int`` (or ``Fraction``) and all
    outputs are converted back to ``int``/``Fraction`` so that sympy types
    never leak into the rest of the package.

    Example:
        >>> engine = ExactLinearAlgebra()
        >>> engine.det([[0, 1], [1, 0]])
        -1
    """

    @staticmethod
    def _matrix(rows: Sequence[Sequence]) -> sympy.Matrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            return sympy.zeros(len(rows), 0)
        return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator)
                              if isinstance(x, Fraction) else x for x in r] for r in rows])

    def det(self, matrix: Sequence[Sequence[int]]) -> int:
        """Exact determinant (Bareiss). The empty matrix has determinant 1."""
        if len(matrix) == 0:
            return 1
        return int(self._matrix(matrix).det(method="bareiss"))

    def rank(self, matrix: Sequence[Sequence]) -> int:
        """Rank over the rationals."""
        if len(matrix) == 0 or len(matrix[0]) == 0:
            return 0
        return int(self._matrix(matrix).rank())

    def inverse(self, matrix: Sequence[Sequence[int]]) -> RatMatrix:
        """Exact rational inverse of a non-singular square matrix."""
        if len(matrix) == 0:
            return []
        inv = self._matrix(matrix).inv()
        return [[_to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]

    def unimodular_inverse(self, matrix: Sequence[Sequence[int]]) -> IntMatrix:
        """Inverse of a unimodular integer matrix, as integers."""
        inv = self.inverse(matrix)
        for row in inv:
            for x in row:
                if x.denominator != 1:
                    raise ValueError("matrix is not unimodular")
        return [[int(x) for x in row] for row in inv]

    def solve_in_span(
        self, rows: Sequence[Sequence[int]], target: Sequence[Fraction]
    ) -> Optional[list[Fraction]]:
        """Coefficients c with sum(c_i * rows[i]) == target, or None.

        Args:
            rows: Linearly independent row vectors
            target: Rational vector of the same length

        Returns:
            Unique rational coefficients, or None if target is not in the span
        """
        if len(rows) == 0:
            return [] if all(x == 0 for x in target) else None
        system = self._matrix(rows).T
        rhs = self._matrix([[x] for x in target])
        try:
            solution, params = system.gauss_jordan_solve(rhs)
        except ValueError:
            return None
        if params.rows:
            raise ValueError("rows are not linearly independent")
        return [_to_fraction(solution[i, 0]) for i in range(solution.rows)]

    def signature(self, gram: Sequence[Sequence[int]]) -> tuple[int, int]:
        """Signature (positive, negative) of a symmetric integer matrix.

        The characteristic polynomial of a symmetric matrix is real-rooted,
        so Descartes' rule of signs counts positive and negative roots exactly.
        """
        n = len(gram)
        if n == 0:
            return (0, 0)
        lam = sympy.Symbol("lam")
        coeffs = [int(c) for c in self._matrix(gram).charpoly(lam).all_coeffs()]
        # coeffs[k] multiplies lam**(n-k); trailing zeros are zero eigenvalues
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        positive = _sign_changes(coeffs)
        degree = len(coeffs) - 1
        negative = _sign_changes([c * (-1) ** (degree - k) for k, c in enumerate(coeffs)])
        return (positive, negative)

    def invariant_factors(self, matrix: Sequence[Sequence[int]]) -> list[int]:
        """Invariant factors as computed by sympy (oracle for our own SNF)."""
        if len(matrix) == 0 or len(matrix[0]) == 0:
            return []
        return [int(x) for x in sympy_invariant_factors(self._matrix(matrix), domain=ZZ)]


def _sign_changes(coeffs: Sequence[int]) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# Module-level shared instance - stateless, safe to share
engine = ExactLinearAlgebra()
