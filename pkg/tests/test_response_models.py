"""Unit tests for Pydantic response models.

Tests exact rational rendering, conversion from lattice objects and
validation of the report discriminator.

Follows pytest best practices:
- Parametrized tests for multiple scenarios
- Fixtures for reusable test data
"""

from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.cli.response_models import (
    BMResponse,
    DiscElementModel,
    DiscFormModel,
    ExtMukaiResponse,
    MukaiVectorModel,
    SublatticeResponse,
    SweepResponse,
    TorsorModel,
    frac,
    int_rows,
)
from src.lattice.discform import discriminant_form, element_of, negate_form
from src.lattice.intlat import standard


# =============================================================================
# TEST FIXTURES
# =============================================================================

@pytest.fixture
def form_four():
    """A_<4> = Z/4 with q(1/4) = 1/4."""
    return discriminant_form(standard("<m>", 4))


@pytest.fixture
def extmukai_payload():
    return {
        "g": 3,
        "gram_M": [[0, 1], [1, 0]],
        "gram_Mprime": [[0, 4], [4, 4]],
        "disc_M": 4,
        "disc_Mprime": 16,
        "distinct": True,
        "applicable": True,
        "verdict": "not derived equivalent",
        "signature_M": [2, 2],
        "signature_Mprime": [2, 2],
        "ns_Mprime_block": [[0, -4], [-4, 4]],
        "delta_square": -4,
        "delta_divisibility": 4,
        "generator_dot_beta": -2,
    }


# =============================================================================
# HELPERS
# =============================================================================

class TestFrac:
    """Exact p/q strings."""

    @pytest.mark.parametrize(
        "value,expected",
        [
            pytest.param(Fraction(11, 6), "11/6", id="proper"),
            pytest.param(Fraction(4, 2), "2", id="integer"),
            pytest.param(Fraction(0), "0", id="zero"),
            pytest.param(Fraction(-3, 4), "-3/4", id="negative"),
            pytest.param(3, "3", id="int-input"),
        ],
    )
    def test_frac(self, value, expected):
        assert frac(value) == expected

    def test_int_rows(self):
        assert int_rows(((1, 0), (0, 1))) == [[1, 0], [0, 1]]


# =============================================================================
# SHARED MODELS
# =============================================================================

class TestDiscModels:
    """Conversion from discriminant forms and elements."""

    def test_form_model(self, form_four):
        model = DiscFormModel.from_form(form_four)
        assert model.invariant_factors == [4]
        assert model.order == 4
        assert model.generators == [["1/4"]]
        assert model.q == ["1/4"]
        assert model.pairing == [["1/4"]]

    def test_element_model(self, form_four):
        model = DiscElementModel.from_element(element_of(form_four, ["1/2"]))
        assert model.coeffs == [2]
        assert model.order == 2
        assert model.q == "1"
        assert model.rational_coords == ["1/2"]
        assert not model.negated

    def test_negated_element(self, form_four):
        twisted = negate_form(form_four)
        model = DiscElementModel.from_element(twisted.generator(0))
        assert model.negated
        assert model.q == "7/4"

    def test_trivial_form(self):
        model = DiscFormModel.from_form(discriminant_form(standard("U")))
        assert model.order == 1
        assert model.invariant_factors == []
        assert model.pairing == []

    def test_torsor_defaults(self):
        torsor = TorsorModel(d=4, zeta_value=0, order=1, trivial=True)
        assert torsor.dual_divisor is None
        assert torsor.representative is None

    def test_mukai_vector_requires_all_fields(self):
        with pytest.raises(ValidationError):
            MukaiVectorModel(r=1, E=[0])


# =============================================================================
# REPORTS
# =============================================================================

class TestReportDiscriminator:
    """Every report carries a literal ``report`` field."""

    def test_default_report_name(self, extmukai_payload):
        assert ExtMukaiResponse(**extmukai_payload).report == "extmukai"

    def test_wrong_report_name_rejected(self, extmukai_payload):
        with pytest.raises(ValidationError):
            ExtMukaiResponse(report="bm", **extmukai_payload)

    @pytest.mark.parametrize("name", ["lat_comp", "lat_sat"])
    def test_shared_sublattice_report(self, name):
        report = SublatticeResponse(
            report=name, input_basis=[[2, 2]], basis=[[1, 1]], rank=1, gram=[[2]], index=2,
        )
        assert report.report == name
        assert report.degenerate is False
        assert report.notes == []

    def test_sublattice_report_needs_name(self):
        with pytest.raises(ValidationError):
            SublatticeResponse(input_basis=[], basis=[], rank=0, gram=[])

    def test_sweep_rejects_other_names(self):
        with pytest.raises(ValidationError):
            SweepResponse(report="verify_glue", seed=1, samples=0, verified=0, all_verified=True, rows=[])

    def test_json_round_trip(self, extmukai_payload):
        report = ExtMukaiResponse(**extmukai_payload)
        assert ExtMukaiResponse.model_validate_json(report.model_dump_json()) == report

    def test_missing_field_rejected(self, extmukai_payload):
        del extmukai_payload["disc_Mprime"]
        with pytest.raises(ValidationError):
            ExtMukaiResponse(**extmukai_payload)

    @pytest.mark.parametrize("name", ["bm", "bm_birational"])
    def test_bm_report_names(self, name):
        report = BMResponse(
            report=name, g=3, div_H=4, curve_assumption="smooth irreducible", d=1,
            v_d=MukaiVectorModel(r=0, E=[1], s=-1), div_vd=1, sha_kernel_order=4,
            torsor=TorsorModel(d=1, zeta_value=3, order=4, trivial=False),
        )
        assert report.report == name
        assert report.certificate is None
        assert report.notes == []
