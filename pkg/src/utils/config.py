"""Configuration management for the K3 lattice obstruction toolkit.

Search bounds and oracle sampling parameters are configurable via environment
variables (or a .env file). Every CLI computation parameter can be overridden
by an explicit flag, so golden runs never depend on the environment.
"""

import os
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel, Field

# Load environment variables
load_dotenv()


def _env_int(key: str, default: int) -> int:
    """Get int from environment variable."""
    return int(os.getenv(key, str(default)))


# =============================================================================
# SEARCH CONFIG
# =============================================================================
class SearchConfig(BaseModel):
    """Bounded lattice searches (dual divisors, isotropic classes)."""

    default_bound: int = Field(
        default_factory=lambda: _env_int("LATTICE_SEARCH_BOUND", 3),
        description="Coefficient box used when --bound is not given",
    )
    max_bound: int = Field(
        default_factory=lambda: _env_int("LATTICE_MAX_BOUND", 8),
        description="Largest coefficient box a search accepts",
    )


# =============================================================================
# ORACLE CONFIG
# =============================================================================
class OracleConfig(BaseModel):
    """Randomized oracle sweeps over unimodular models."""

    seed: int = Field(
        default_factory=lambda: _env_int("ORACLE_SEED", 20240917),
        description="Seed for numpy.random.default_rng",
    )
    glue_samples: int = Field(
        default_factory=lambda: _env_int("ORACLE_GLUE_SAMPLES", 100)
    )
    cokernel_samples: int = Field(
        default_factory=lambda: _env_int("ORACLE_COKERNEL_SAMPLES", 50)
    )
    coefficient_box: int = Field(
        default_factory=lambda: _env_int("ORACLE_BOX", 3),
        description="Random basis coefficients are drawn from [-box, box]",
    )
    max_attempts: int = Field(
        default_factory=lambda: _env_int("ORACLE_MAX_ATTEMPTS", 200),
        description="Rejection-sampling attempts per sample",
    )


# =============================================================================
# OUTPUT CONFIG
# =============================================================================
class OutputConfig(BaseModel):
    """Report serialization settings."""

    json_indent: int = Field(default=2, description="Indent for --json output")
    sort_keys: bool = Field(default=True, description="Sort keys for byte-stable JSON")


class Config(BaseModel):
    """Main configuration class."""

    search: SearchConfig = Field(default_factory=SearchConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    # Project paths
    project_root: Path = Field(
        default_factory=lambda: Path(__file__).parent.parent.parent
    )

    def get_section(self, name: str) -> BaseModel:
        """Get a config section by name.

        Args:
            name: 'search', 'oracle', or 'output'

        Returns:
            The corresponding config section
        """
        sections = {
            "search": self.search,
            "oracle": self.oracle,
            "output": self.output,
        }
        name = name.lower()
        if name not in sections:
            raise ValueError(f"Unknown config section: {name}")
        return sections[name]


# Global config instance
config = Config()
