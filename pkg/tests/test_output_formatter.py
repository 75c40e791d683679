"""Unit tests for output formatter module.

Tests the text and JSON renderings of CLI report models.

Follows pytest best practices:
- Parametrized tests for both formatters
- Fixtures for reusable report models
- Clear separation of concerns
"""

import json

import pytest

from src.cli.output_formatter import (
    JsonFormatter,
    OutputMode,
    ReportFormatter,
    TextFormatter,
    get_formatter,
)
from src.cli.response_models import (
    DiscFormModel,
    DiscResponse,
    DivisibilityResponse,
    ErrorDetail,
    ErrorResponse,
    SweepResponse,
)
from src.lattice.discform import discriminant_form
from src.lattice.intlat import standard


# =============================================================================
# TEST FIXTURES
# =============================================================================

@pytest.fixture
def divisibility_report():
    """div of (1, 1) in U."""
    return DivisibilityResponse(vector=[1, 1], divisibility=1, primitive=True, square=2)


@pytest.fixture
def disc_report():
    """Discriminant form of <-6>."""
    form = discriminant_form(standard("<m>", -6))
    return DiscResponse(label="<-6>", form=DiscFormModel.from_form(form), trivial=False)


@pytest.fixture
def sweep_report():
    return SweepResponse(
        report="verify_cokernel_sweep",
        seed=7,
        samples=2,
        verified=2,
        all_verified=True,
        rows=[
            {"sample": 0, "divisibility": 2, "index": 2, "witness_ok": True},
            {"sample": 1, "divisibility": 1, "index": 1, "witness_ok": True},
        ],
    )


# =============================================================================
# OUTPUT MODE TESTS
# =============================================================================

class TestOutputMode:
    """Tests for OutputMode enum."""

    def test_text_mode(self):
        assert OutputMode.TEXT.value == "text"

    def test_json_mode(self):
        assert OutputMode.JSON.value == "json"

    @pytest.mark.parametrize(
        "flag,expected",
        [
            pytest.param(True, OutputMode.JSON, id="json"),
            pytest.param(False, OutputMode.TEXT, id="text"),
        ],
    )
    def test_from_flag(self, flag, expected):
        assert OutputMode.from_flag(flag) is expected


# =============================================================================
# FACTORY TESTS
# =============================================================================

class TestGetFormatter:
    """Tests for get_formatter factory."""

    def test_default_is_text(self):
        assert isinstance(get_formatter(), TextFormatter)

    def test_json_by_name(self):
        assert isinstance(get_formatter("JSON"), JsonFormatter)

    def test_with_enum(self):
        assert isinstance(get_formatter(OutputMode.TEXT), TextFormatter)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            get_formatter("yaml")

    @pytest.mark.parametrize("mode", ["text", "json"])
    def test_formatter_implements_protocol(self, mode):
        assert isinstance(get_formatter(mode), ReportFormatter)


# =============================================================================
# TEXT FORMATTER TESTS
# =============================================================================

class TestTextFormatter:
    """Field/value tables."""

    @pytest.fixture
    def formatter(self):
        return TextFormatter()

    def test_title_line(self, formatter, divisibility_report):
        out = formatter.format(divisibility_report)
        assert out.splitlines()[0] == "== lat_div =="

    def test_booleans_render_as_words(self, formatter, divisibility_report):
        out = formatter.format(divisibility_report)
        assert "yes" in out
        assert "True" not in out

    def test_nested_fields_are_dotted(self, formatter, disc_report):
        out = formatter.format(disc_report)
        assert "form.invariant_factors" in out
        assert "form.q" in out
        assert "11/6" in out

    def test_none_renders_as_dash(self, formatter):
        out = formatter.format(DiscResponse(label=None, form=DiscFormModel.from_form(
            discriminant_form(standard("U"))), trivial=True))
        assert "label" in out
        assert " -" in out

    def test_rows_become_a_table(self, formatter, sweep_report):
        out = formatter.format(sweep_report)
        header, _, table = out.partition("\n\n")
        assert "all_verified" in header
        assert "witness_ok" in table.splitlines()[0]
        assert len(table.strip().splitlines()) == 3

    def test_error_report(self, formatter):
        out = formatter.format(ErrorResponse(error=ErrorDetail(code="zero_vector", message="zero vector")))
        assert out.startswith("== error ==")
        assert "error.code" in out
        assert "zero_vector" in out


# =============================================================================
# JSON FORMATTER TESTS
# =============================================================================

class TestJsonFormatter:
    """Sorted, indented JSON."""

    def test_round_trip(self, disc_report):
        out = JsonFormatter().format(disc_report)
        assert DiscResponse.model_validate_json(out) == disc_report

    def test_keys_are_sorted(self, divisibility_report):
        payload = json.loads(JsonFormatter().format(divisibility_report))
        assert list(payload) == sorted(payload)

    def test_custom_indent(self, divisibility_report):
        out = JsonFormatter(indent=4).format(divisibility_report)
        assert '\n    "divisibility": 1' in out

    def test_trailing_newline(self, divisibility_report):
        assert JsonFormatter().format(divisibility_report).endswith("}\n")

    def test_rationals_stay_exact(self, disc_report):
        payload = json.loads(JsonFormatter().format(disc_report))
        assert payload["form"]["q"] == ["11/6"]


class TestFormatterInterchangeability:
    """Both formatters accept every report."""

    @pytest.fixture(params=["text", "json"])
    def formatter(self, request):
        return get_formatter(request.param)

    def test_all_reports_render(self, formatter, divisibility_report, disc_report, sweep_report):
        for report in (divisibility_report, disc_report, sweep_report):
            out = formatter.format(report)
            assert isinstance(out, str)
            assert out.endswith("\n")
