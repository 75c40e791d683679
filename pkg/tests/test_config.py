"""Unit tests for configuration sections."""

import pytest

from src.utils.config import Config, OracleConfig, SearchConfig, config


class TestConfig:
    def test_sections(self):
        assert config.get_section("search") is config.search
        assert config.get_section("ORACLE") is config.oracle
        assert config.get_section("output").sort_keys

    def test_unknown_section(self):
        with pytest.raises(ValueError, match="Unknown config section"):
            config.get_section("agent")

    def test_search_bound_from_env(self, monkeypatch):
        monkeypatch.setenv("LATTICE_SEARCH_BOUND", "5")
        monkeypatch.setenv("LATTICE_MAX_BOUND", "6")
        section = SearchConfig()
        assert (section.default_bound, section.max_bound) == (5, 6)

    def test_oracle_defaults(self, monkeypatch):
        for key in ("ORACLE_SEED", "ORACLE_GLUE_SAMPLES", "ORACLE_COKERNEL_SAMPLES"):
            monkeypatch.delenv(key, raising=False)
        section = OracleConfig()
        assert section.seed == 20240917
        assert (section.glue_samples, section.cokernel_samples) == (100, 50)

    def test_project_root(self):
        assert (Config().project_root / "pyproject.toml").exists()
