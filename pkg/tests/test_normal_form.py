"""Unit tests for normal_form module.

Tests Smith normal form, Hermite rows and integral solves.
Follows pytest best practices:
- Parametrized tests for worked examples
- Exhaustive brute-force oracle for small matrices
- Seeded random round-trips (numpy default_rng)
"""

from itertools import product
from math import gcd

import numpy as np
import pytest

from src.lattice.algebra import engine
from src.lattice.normal_form import (
    hermite_rows,
    kernel_basis,
    mat_mul,
    mat_vec,
    snf,
    solve_integer,
)


def _assert_valid(matrix, dec):
    """left * A * right == diag(d), unimodular transforms, divisibility chain."""
    assert [list(r) for r in mat_mul(mat_mul(dec.left, matrix), dec.right)] == dec.diagonal_matrix()
    assert abs(engine.det(dec.left)) == 1
    assert abs(engine.det(dec.right)) == 1
    for a, b in zip(dec.d, dec.d[1:]):
        assert a >= 0 and b >= 0
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0


# =============================================================================
# SNF EXAMPLES
# =============================================================================

SNF_CASES = [
    pytest.param([[2, 0], [0, 2]], (2, 2), id="already-diagonal"),
    pytest.param([[0, 1], [1, 0]], (1, 1), id="hyperbolic-plane"),
    pytest.param([[4, 0, 0], [0, 0, -1], [0, -1, 0]], (1, 1, 4), id="four-plus-U"),
    pytest.param([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12), id="textbook-3x3"),
    pytest.param([[0, 0], [0, 0]], (0, 0), id="zero"),
    pytest.param([[3, 6]], (3,), id="single-row"),
]


class TestSnfExamples:
    """Worked Smith normal form examples."""

    @pytest.mark.parametrize("matrix,expected", SNF_CASES)
    def test_invariant_factors(self, matrix, expected):
        dec = snf(matrix)
        assert dec.d == expected
        _assert_valid(matrix, dec)

    def test_empty_matrix_returns_empty_d(self):
        dec = snf([])
        assert dec.d == ()
        assert dec.rank == 0

    def test_nontrivial_indices(self):
        dec = snf([[4, 0, 0], [0, 0, -1], [0, -1, 0]])
        assert dec.nontrivial == [2]


# =============================================================================
# SNF ORACLES
# =============================================================================

def _brute_force_2x2(a):
    """d1 = gcd of entries, d1 * d2 = |det|."""
    d1 = gcd(*(x for row in a for x in row))
    det = abs(a[0][0] * a[1][1] - a[0][1] * a[1][0])
    if d1 == 0:
        return (0, 0)
    return (d1, det // d1)


class TestSnfOracles:
    """SNF against independent computations."""

    def test_exhaustive_2x2_box(self):
        """Every 2x2 matrix with entries in [-3, 3]."""
        for entries in product(range(-3, 4), repeat=4):
            a = [list(entries[:2]), list(entries[2:])]
            dec = snf(a)
            assert dec.d == _brute_force_2x2(a), a
            _assert_valid(a, dec)

    def test_random_round_trip(self):
        rng = np.random.default_rng(20240917)
        for _ in range(200):
            m, n = (int(x) for x in rng.integers(1, 6, size=2))
            a = rng.integers(-9, 10, size=(m, n)).tolist()
            _assert_valid(a, snf(a))

    def test_agrees_with_sympy_invariant_factors(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 25:
            n = int(rng.integers(2, 5))
            a = rng.integers(-6, 7, size=(n, n)).tolist()
            if engine.det(a) == 0:
                continue
            assert list(snf(a).d) == [abs(x) for x in engine.invariant_factors(a)]
            checked += 1


# =============================================================================
# HERMITE ROWS, KERNELS AND SOLVES
# =============================================================================

class TestHermiteAndSolves:
    """Canonical bases and integral linear algebra."""

    def test_same_lattice_same_hermite_rows(self):
        assert hermite_rows([[2, 2], [0, 2]]) == hermite_rows([[2, 0], [0, 2]]) == [[2, 0], [0, 2]]

    def test_dependent_rows_dropped(self):
        assert hermite_rows([[1, 2], [2, 4]]) == [[1, 2]]

    def test_kernel_of_one_row(self):
        assert kernel_basis([[1, 1]], 2) == [[1, -1]]

    def test_kernel_of_empty_constraints_is_everything(self):
        assert kernel_basis([], 3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_solve_integer_finds_solution(self):
        x = solve_integer([[2, 4], [0, 3]], [6, 3])
        assert mat_vec([[2, 4], [0, 3]], x) == [6, 3]

    def test_solve_integer_none_when_not_integral(self):
        assert solve_integer([[2, 4]], [3]) is None
