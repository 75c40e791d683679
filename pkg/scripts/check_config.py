#!/usr/bin/env python3
"""
Check if configuration is loaded correctly
Show search bounds, oracle sampling parameters and output settings
"""

import os
import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.utils.config import config

ENV_KEYS = {
    "search": {
        "default_bound": "LATTICE_SEARCH_BOUND",
        "max_bound": "LATTICE_MAX_BOUND",
    },
    "oracle": {
        "seed": "ORACLE_SEED",
        "glue_samples": "ORACLE_GLUE_SAMPLES",
        "cokernel_samples": "ORACLE_COKERNEL_SAMPLES",
        "coefficient_box": "ORACLE_BOX",
        "max_attempts": "ORACLE_MAX_ATTEMPTS",
    },
}


def check_config() -> int:
    """Print the effective configuration; return 0 when it is consistent."""
    print("=" * 60)
    print("Configuration Check")
    print("=" * 60)

    for section_name in ("search", "oracle", "output"):
        section = config.get_section(section_name)
        print(f"\n[{section_name}]")
        for key, value in section.model_dump().items():
            env_var = ENV_KEYS.get(section_name, {}).get(key)
            status = "(default)" if env_var is None or os.getenv(env_var) is None else f"(from {env_var})"
            print(f"  {key}: {value} {status}")

    print(f"\n  LOG_LEVEL: {os.getenv('LOG_LEVEL', '(Not set, using WARNING)')}")
    print(f"  LOG_FILE: {os.getenv('LOG_FILE', '(Not set)')}")

    problems = []
    if config.search.default_bound < 0:
        problems.append("default_bound must be non-negative")
    if config.search.default_bound > config.search.max_bound:
        problems.append("default_bound exceeds max_bound")
    if config.oracle.coefficient_box < 1:
        problems.append("coefficient_box must be at least 1")
    if min(config.oracle.glue_samples, config.oracle.cokernel_samples, config.oracle.max_attempts) < 1:
        problems.append("sample counts and max_attempts must be positive")

    print("\nVerification:")
    if problems:
        for p in problems:
            print(f"  ❌ {p}")
        return 1
    print("  ✅ Consistent")
    return 0


if __name__ == "__main__":
    sys.exit(check_config())
