"""Tests for the glue and cokernel oracles.

Follows pytest best practices:
- Fixtures for the unimodular models
- Worked examples with hand-checked values
- Seeded sweeps marked as benchmark
"""

from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from src.lattice.errors import (
    DegenerateLatticeError,
    NotPrimitiveError,
    NotUnimodularError,
    ZeroVectorError,
)
from src.lattice.intlat import IntegralLattice, Sublattice, direct_sum, signature, standard
from src.lattice.oracles import (
    cokernel_sweep,
    cross_check_model,
    glue_check,
    glue_sweep,
    oracle_ambients,
    random_primitive_sublattice,
    transcendental_cokernel,
    unimodular_envelope,
)


# =============================================================================
# TEST FIXTURES
# =============================================================================

@pytest.fixture
def U():
    return standard("U")


@pytest.fixture
def UU():
    return direct_sum(standard("U"), standard("U"))


@pytest.fixture
def U3_E8():
    u = standard("U")
    return direct_sum(u, u, u, standard("E8-"))


def _unit(n: int, i: int, k: int = 1) -> list[int]:
    return [k if j == i else 0 for j in range(n)]


# =============================================================================
# GLUE CHECK
# =============================================================================

class TestGlueCheck:
    """A_T(-1) ≅ A_N through the explicit glue map."""

    def test_diagonal_of_U(self, U):
        report = glue_check(U, Sublattice.span(U, [[1, 1]]))
        assert report.form_n.invariant_factors == (2,)
        assert report.form_t.invariant_factors == (2,)
        assert report.form_n.q_values == (Fraction(1, 2),)
        assert report.form_t.q_values == (Fraction(3, 2),)
        assert report.verified

    def test_unimodular_summand_has_trivial_forms(self, U):
        report = glue_check(U, Sublattice.span(U, [[1, 0], [0, 1]]))
        assert report.form_n.is_trivial
        assert report.form_t.is_trivial
        assert report.complement.rank == 0
        assert report.verified

    def test_isotropic_line_is_rejected(self, U):
        with pytest.raises(DegenerateLatticeError):
            glue_check(U, Sublattice.span(U, [[1, 0]]))

    def test_line_in_two_planes(self, UU):
        report = glue_check(UU, Sublattice.span(UU, [[1, 1, 0, 0]]))
        assert report.form_n.order == report.form_t.order == 2
        assert report.complement.rank == 3
        assert report.verified

    def test_non_primitive_input_is_saturated(self, UU):
        report = glue_check(UU, Sublattice.span(UU, [[2, 2, 0, 0]]))
        assert report.sublattice.basis == ((1, 1, 0, 0),)
        assert report.verified

    def test_requires_unimodular_ambient(self):
        lattice = standard("U(k)", 2)
        with pytest.raises(NotUnimodularError, match="glue check requires unimodular ambient"):
            glue_check(lattice, Sublattice.span(lattice, [[1, 1]]))


# =============================================================================
# TRANSCENDENTAL COKERNEL
# =============================================================================

class TestTranscendentalCokernel:
    """[L/N : K/N] == div_N(v) with an explicit witness."""

    def test_unimodular_summand(self, UU):
        sub = Sublattice.span(UU, [_unit(4, 0), _unit(4, 1)])
        report = transcendental_cokernel(UU, sub, [1, 1])
        assert report.divisibility == 1
        assert report.index == 1
        assert report.verified

    def test_line_of_square_two(self, UU):
        sub = Sublattice.span(UU, [[1, 1, 0, 0]])
        report = transcendental_cokernel(UU, sub, [1])
        assert report.divisibility == 2
        assert report.index == 2
        assert report.verified

    def test_extended_neron_severi_of_degree_four(self, U3_E8):
        """N = span{e2, e1 + 2 f1, -f2} has Gram [[0,0,-1],[0,4,0],[-1,0,0]]."""
        n = U3_E8.rank
        sub = Sublattice.span(U3_E8, [
            _unit(n, 2),
            [1, 2] + [0] * (n - 2),
            _unit(n, 3, -1),
        ])
        assert sub.gram_restricted == ((0, 0, -1), (0, 4, 0), (-1, 0, 0))
        assert sub.is_primitive

        report = transcendental_cokernel(U3_E8, sub, [0, 1, 0])
        assert report.divisibility == 4
        assert report.index == 4
        assert report.verified
        assert U3_E8.pair(report.witness, report.vector) == 1
        assert report.kernel_generator == [4 * x for x in report.witness]

    def test_requires_primitive_sublattice(self, UU):
        sub = Sublattice.span(UU, [[2, 2, 0, 0]])
        with pytest.raises(NotPrimitiveError):
            transcendental_cokernel(UU, sub, [1])

    def test_requires_primitive_vector(self, UU):
        sub = Sublattice.span(UU, [_unit(4, 0), _unit(4, 1)])
        with pytest.raises(NotPrimitiveError):
            transcendental_cokernel(UU, sub, [2, 2])

    def test_zero_vector(self, UU):
        sub = Sublattice.span(UU, [_unit(4, 0), _unit(4, 1)])
        with pytest.raises(ZeroVectorError):
            transcendental_cokernel(UU, sub, [0, 0])

    def test_requires_unimodular_ambient(self):
        lattice = standard("U(k)", 2)
        with pytest.raises(NotUnimodularError):
            transcendental_cokernel(lattice, Sublattice.span(lattice, [[1, 0]]), [1])


# =============================================================================
# UNIMODULAR ENVELOPE
# =============================================================================

class TestUnimodularEnvelope:
    """Every even lattice embeds primitively in an even unimodular one."""

    @pytest.mark.parametrize(
        "lattice",
        [
            pytest.param(standard("<m>", 4), id="<4>"),
            pytest.param(IntegralLattice(((0, 0, -1), (0, 4, 0), (-1, 0, 0))), id="<4>+U"),
            pytest.param(standard("U(k)", 2), id="U(2)"),
            pytest.param(direct_sum(standard("<m>", 2), standard("<m>", -6)), id="<2>+<-6>"),
        ],
    )
    def test_envelope(self, lattice):
        envelope, embedded = unimodular_envelope(lattice)
        assert envelope.is_unimodular
        assert envelope.rank == 2 * lattice.rank
        assert embedded.gram_restricted == lattice.gram
        assert embedded.is_primitive

    def test_cross_check_model(self):
        ambient, embedded = cross_check_model(standard("<m>", 4))
        assert ambient.is_unimodular
        assert ambient.rank == 12
        assert signature(ambient) == (2, 10)
        assert embedded.gram_restricted == ((4,),)


# =============================================================================
# RANDOMIZED SWEEPS
# =============================================================================

class TestRandomSamples:
    """Sampling helpers."""

    def test_sample_is_primitive_and_non_degenerate(self, UU):
        sub = random_primitive_sublattice(UU, 2, 3, np.random.default_rng(1))
        assert sub.rank == 2
        assert sub.is_primitive
        assert not sub.is_degenerate

    def test_ambients_are_unimodular(self):
        for lattice in oracle_ambients().values():
            assert lattice.is_unimodular

    def test_sweeps_are_deterministic(self):
        pd.testing.assert_frame_equal(glue_sweep(6, seed=7), glue_sweep(6, seed=7))
        pd.testing.assert_frame_equal(cokernel_sweep(6, seed=7), cokernel_sweep(6, seed=7))


@pytest.mark.benchmark
class TestOracleSweeps:
    """Full seeded sweeps at the configured sizes."""

    def test_glue_sweep(self):
        frame = glue_sweep(100)
        assert len(frame) == 100
        assert frame["verified"].all()
        assert (frame["order_n"] == frame["order_t"]).all()

    def test_cokernel_sweep(self):
        frame = cokernel_sweep(50)
        assert len(frame) == 50
        assert frame["verified"].all()
        assert frame["witness_ok"].all()
        assert (frame["index"] == frame["divisibility"]).all()
