"""Unit tests for beauville_mukai module.

Tests divisibility of v_d, Sha kernels, torsor classes, twisted exponents,
the birationality criterion and the Hilbert scheme comparison.
Follows pytest best practices:
- Fixtures for the Beauville-Mukai configurations
- Parametrized tests for worked examples
- Full d/e grids marked as benchmark
"""

from math import gcd

import pytest

from src.k3.beauville_mukai import (
    BMConfig,
    birational_non_isomorphic_pairs,
    bm_birational,
    div_vd,
    elliptic_with_section,
    find_dual_divisor,
    genus_one_cross_check,
    hilbert_scheme_criterion,
    obstruction_image_exponent,
    sha_kernel_generator,
    sha_kernel_order,
    torsor_class,
    torsor_equivalent,
    twisted_equivalence_exponents,
    v_d,
    zeta_H,
)
from src.k3.mukai import K3Model, ModuliKind, MukaiVector
from src.lattice.discform import discriminant_form, element_of
from src.lattice.errors import HypothesisError, NotPrimitiveError, PreconditionError
from src.lattice.intlat import direct_sum, standard


# =============================================================================
# TEST FIXTURES
# =============================================================================

def _u_minus4() -> K3Model:
    return K3Model(direct_sum(standard("U"), standard("<m>", -4)))


@pytest.fixture
def genus_three():
    """Picard rank one, H² = 4."""
    return BMConfig.rank_one(3)


@pytest.fixture
def section_div2():
    """NS = U ⊕ <-4>, H = 2e + 2f + x: H² = 4, div(H) = 2."""
    return BMConfig(_u_minus4(), (2, 2, 1))


@pytest.fixture
def section_div4():
    """NS = U ⊕ <-4>, H = 4e + 4f + x: H² = 28, div(H) = 4."""
    return BMConfig(_u_minus4(), (4, 4, 1))


def _elliptic(g: int) -> BMConfig:
    """NS = U, H = e + (g-1) f."""
    return BMConfig(K3Model(standard("U")), (1, g - 1))


# =============================================================================
# CONFIGURATIONS
# =============================================================================

class TestBMConfig:
    """Curve classes and their invariants."""

    def test_rank_one(self, genus_three):
        assert genus_three.g == 3
        assert genus_three.h_square == 4
        assert genus_three.div_H == 4

    def test_u_minus4(self, section_div2, section_div4):
        assert (section_div2.g, section_div2.div_H) == (3, 2)
        assert (section_div4.g, section_div4.div_H) == (15, 4)

    def test_elliptic_model(self):
        cfg = _elliptic(4)
        assert cfg.g == 4
        assert cfg.div_H == 1

    def test_genus_below_two(self):
        with pytest.raises(PreconditionError):
            BMConfig.rank_one(1)

    def test_H_must_be_primitive(self):
        with pytest.raises(NotPrimitiveError):
            BMConfig(K3Model(standard("U")), (2, 2))


# =============================================================================
# v_d AND THE SHA KERNEL
# =============================================================================

class TestVdDivisibility:
    """div(v_d) = gcd(div(H), d + 1 - g)."""

    def test_v_d(self, genus_three):
        assert v_d(genus_three, 2) == MukaiVector(0, (1,), 0)
        assert v_d(genus_three, 0) == MukaiVector(0, (1,), -2)

    @pytest.mark.parametrize(
        "g,d,expected",
        [
            pytest.param(3, 0, 2, id="g3-d0"),
            pytest.param(3, 2, 4, id="g3-d=g-1"),
            pytest.param(2, 0, 1, id="g2-d0"),
            pytest.param(4, 7, 2, id="g4-d7"),
        ],
    )
    def test_rank_one(self, g, d, expected):
        assert div_vd(BMConfig.rank_one(g), d) == expected

    @pytest.mark.parametrize("g", range(2, 11))
    def test_sha_kernel_in_degree_zero(self, g):
        assert sha_kernel_order(BMConfig.rank_one(g), 0) == 2

    def test_sha_kernel_trivial_at_g_minus_one(self, genus_three):
        assert sha_kernel_order(genus_three, 2) == 1

    def test_sha_kernel_of_order_three(self):
        assert sha_kernel_order(BMConfig.rank_one(4), 7) == 3

    def test_formula_matches_gram_on_u_minus4(self, section_div4):
        for d in range(-20, 21):
            assert div_vd(section_div4, d) == gcd(4, d - 14)
            assert sha_kernel_order(section_div4, d) * div_vd(section_div4, d) == 4

    def test_sha_kernel_generator(self, genus_three):
        generator = sha_kernel_generator(genus_three, 0)
        assert generator.d == 2
        assert generator.zeta_value == 2
        assert generator.order == 2


# =============================================================================
# TORSORS
# =============================================================================

class TestTorsors:
    """Classes of Pic^d in Sha(S, H) ≅ Z/div(H)."""

    def test_dual_divisor_rank_one(self, genus_three):
        assert find_dual_divisor(genus_three) == (1,)

    def test_dual_divisor_elliptic(self):
        cfg = _elliptic(3)
        D = find_dual_divisor(cfg)
        assert D is not None
        pairing = cfg.ns.pair(D, cfg.H)
        assert pairing > 0

    def test_dual_divisor_empty_box(self, genus_three):
        assert find_dual_divisor(genus_three, bound=0) is None

    def test_bound_above_maximum(self, genus_three):
        with pytest.raises(ValueError, match="exceeds the maximum"):
            find_dual_divisor(genus_three, bound=100)

    @pytest.mark.parametrize(
        "d,zeta,order",
        [
            pytest.param(4, 0, 1, id="trivial"),
            pytest.param(1, 3, 4, id="generator"),
            pytest.param(5, 3, 4, id="periodic"),
            pytest.param(2, 2, 2, id="order-two"),
        ],
    )
    def test_torsor_class(self, genus_three, d, zeta, order):
        cls = torsor_class(genus_three, d)
        assert cls.zeta_value == zeta
        assert cls.order == order
        assert cls.is_trivial == (zeta == 0)
        assert cls.dual_divisor == (1,)
        assert zeta_H(genus_three, cls.representative) == zeta

    def test_zeta_of_zero_and_generator(self, genus_three):
        form = discriminant_form(genus_three.ns)
        assert zeta_H(genus_three, form.zero()) == 0
        assert zeta_H(genus_three, element_of(form, ["1/4"])) == 1

    def test_torsor_equivalence(self, genus_three):
        assert torsor_equivalent(genus_three, 0, 4)
        assert not torsor_equivalent(genus_three, 0, 2)
        assert torsor_equivalent(genus_three, 3, 3)

    @pytest.mark.parametrize(
        "d,e,expected",
        [
            pytest.param(2, 1, 1, id="e=1"),
            pytest.param(2, 8, 0, id="e=0-mod"),
            pytest.param(2, 6, 2, id="e=6"),
        ],
    )
    def test_obstruction_image_exponent(self, genus_three, d, e, expected):
        assert obstruction_image_exponent(genus_three, d, e) == expected


class TestTwistedExponents:
    """Brauer twists on both sides of a twisted equivalence."""

    def test_rank_one(self, genus_three):
        result = twisted_equivalence_exponents(genus_three, 1, 2)
        assert (result.modulus_d, result.exponent_on_d) == (1, 0)
        assert (result.modulus_e, result.exponent_on_e) == (4, 3)
        assert result.applicable

    def test_higher_rank_is_bookkeeping_only(self, section_div2):
        result = twisted_equivalence_exponents(section_div2, 0, 2)
        assert not result.applicable
        assert result.note


# =============================================================================
# ELLIPTIC FIBRATIONS AND BIRATIONALITY
# =============================================================================

class TestEllipticWithSection:
    """Search for U ⊂ NS."""

    def test_hyperbolic_plane(self):
        assert elliptic_with_section(standard("U")) == (1, 0)

    def test_u_minus4(self):
        assert elliptic_with_section(_u_minus4().ns) == (1, 0, 0)

    def test_rank_one_is_inconclusive(self):
        assert elliptic_with_section(standard("<m>", 4)) is None


class TestBirationality:
    """Pic^d ~ Pic^e iff gcd(div H, d+1-g) = gcd(div H, e+1-g)."""

    def test_birational_pair(self, section_div2):
        cert = bm_birational(section_div2, 0, 2)
        assert cert.birational
        assert cert.classes_equal
        assert cert.orbit_equivalent
        assert cert.witness == (1, 0, 0)

    def test_non_birational_pair(self, section_div2):
        cert = bm_birational(section_div2, 0, 1)
        assert not cert.birational
        assert (cert.gcd_d, cert.gcd_e) == (2, 1)
        assert not cert.orbit_equivalent

    def test_needs_elliptic_section(self, genus_three):
        with pytest.raises(HypothesisError, match="theorem hypothesis not verified"):
            bm_birational(genus_three, 0, 2)

    def test_no_extra_pairs_when_div_H_is_two(self, section_div2):
        assert birational_non_isomorphic_pairs(section_div2, 6).empty

    def test_birational_but_not_isomorphic(self, section_div4):
        pairs = birational_non_isomorphic_pairs(section_div4, 6)
        assert not pairs.empty
        assert ((pairs["d"] == 1) & (pairs["e"] == 3)).any()
        for d, e in zip(pairs["d"], pairs["e"]):
            assert not torsor_equivalent(section_div4, d, e)


@pytest.mark.benchmark
class TestBirationalityGrid:
    """Every criterion agrees on the full d/e grid."""

    @pytest.mark.parametrize(
        "cfg",
        [
            pytest.param(BMConfig(_u_minus4(), (2, 2, 1)), id="U+<-4>-div2"),
            pytest.param(BMConfig(_u_minus4(), (4, 4, 1)), id="U+<-4>-div4"),
            pytest.param(_elliptic(3), id="U-g3"),
        ],
    )
    def test_criteria_agree(self, cfg):
        for d in range(-6, 7):
            for e in range(-6, 7):
                cert = bm_birational(cfg, d, e)
                expected = gcd(cfg.div_H, d + 1 - cfg.g) == gcd(cfg.div_H, e + 1 - cfg.g)
                assert cert.birational == expected
                assert cert.classes_equal == expected
                assert cert.orbit_equivalent == expected


# =============================================================================
# CROSS CHECKS
# =============================================================================

class TestCrossChecks:
    """Genus-one fibres and Hilbert schemes."""

    def test_genus_one_fibres_are_fine(self):
        frame = genus_one_cross_check(standard("U"), (1, 0), 5)
        assert len(frame) == 11
        assert frame["fine"].all()
        assert (frame["sha_kernel_order"] == 1).all()
        assert (frame["v_square"] == 0).all()

    def test_genus_one_needs_isotropic_class(self):
        with pytest.raises(PreconditionError):
            genus_one_cross_check(standard("U"), (1, 1), 2)

    def test_hilbert_scheme_itself(self):
        result = hilbert_scheme_criterion(_u_minus4(), MukaiVector(1, (0, 0, 0), -2))
        assert result.n == 3
        assert result.fine
        assert result.birational
        assert result.derived_equivalent

    def test_non_fine_vector_is_not_birational(self):
        result = hilbert_scheme_criterion(_u_minus4(), MukaiVector(0, (2, 2, 1), 0))
        assert result.n == 3
        assert result.div_v == 2
        assert not result.fine
        assert not result.birational

    def test_hilbert_needs_elliptic_section(self):
        with pytest.raises(HypothesisError):
            hilbert_scheme_criterion(K3Model.rank_one(4), MukaiVector(1, (0,), -2))

    def test_hilbert_needs_positive_square(self):
        with pytest.raises(PreconditionError):
            hilbert_scheme_criterion(_u_minus4(), MukaiVector(0, (0, 0, 0), 1))

    def test_hilbert_carries_existence_verdict(self):
        result = hilbert_scheme_criterion(_u_minus4(), MukaiVector(1, (0, 0, 0), -2))
        assert result.existence.kind is ModuliKind.HYPERKAEHLER
        assert result.existence.dimension == 2 * result.n

    def test_hilbert_rank_zero_without_hint_is_not_covered(self):
        result = hilbert_scheme_criterion(_u_minus4(), MukaiVector(0, (2, 2, 1), 0))
        assert result.existence.kind is ModuliKind.NOT_COVERED
        assert result.existence.dimension is None

    def test_hilbert_rejects_imprimitive_vector(self):
        with pytest.raises(NotPrimitiveError, match="Mukai vector must be primitive"):
            hilbert_scheme_criterion(_u_minus4(), MukaiVector(2, (0, 0, 0), -4))
