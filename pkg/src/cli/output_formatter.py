"""Output Formatter - text tables or JSON for CLI reports.

Both formatters take a pydantic response model and return a string:
- TextFormatter: aligned field/value tables rendered through pandas
- JsonFormatter: sorted-key, indented JSON, byte-stable across runs

Usage:
    formatter = get_formatter("json")
    print(formatter.format(response))
"""

import json
from enum import Enum
from typing import Any, Protocol, runtime_checkable

import pandas as pd
from pydantic import BaseModel

from ..utils.config import config


# =============================================================================
# OUTPUT MODE ENUM
# =============================================================================

class OutputMode(str, Enum):
    """Output format modes."""
    TEXT = "text"      # Aligned tables for humans
    JSON = "json"      # Machine-readable, round-trippable

    @classmethod
    def from_flag(cls, as_json: bool) -> "OutputMode":
        return cls.JSON if as_json else cls.TEXT


# =============================================================================
# FORMATTER PROTOCOL
# =============================================================================

@runtime_checkable
class ReportFormatter(Protocol):
    """Protocol shared by all report formatters."""

    def format(self, response: BaseModel) -> str:
        """Render a response model."""
        ...


# =============================================================================
# TEXT FORMATTER
# =============================================================================

def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    if isinstance(value, list) and value and all(isinstance(r, list) for r in value):
        return "; ".join(" ".join(str(x) for x in row) for row in value)
    if isinstance(value, list):
        return "[" + ", ".join(_cell(x) for x in value) + "]"
    if isinstance(value, dict):
        return ", ".join(f"{k}={_cell(v)}" for k, v in value.items())
    return str(value)


class TextFormatter:
    """Renders a report as a two-column field/value table.

    Nested models become dotted field names; a ``rows`` list (sweeps)
    is appended as its own table.
    """

    def _flatten(self, data: dict, prefix: str = "") -> list[tuple[str, str]]:
        out = []
        for key, value in data.items():
            name = f"{prefix}{key}"
            if isinstance(value, dict) and key != "rows":
                out.extend(self._flatten(value, f"{name}."))
            else:
                out.append((name, _cell(value)))
        return out

    def format(self, response: BaseModel) -> str:
        data = response.model_dump(mode="json")
        rows = data.pop("rows", None)
        title = data.pop("report", "report")
        table = pd.DataFrame(self._flatten(data), columns=["field", "value"])
        text = f"== {title} ==\n" + table.to_string(index=False, justify="left")
        if rows:
            text += "\n\n" + pd.DataFrame(rows).to_string(index=False)
        return text + "\n"


# =============================================================================
# JSON FORMATTER
# =============================================================================

class JsonFormatter:
    """Renders a report as JSON with sorted keys and fixed indentation."""

    def __init__(self, indent: int | None = None, sort_keys: bool | None = None):
        self.indent = config.output.json_indent if indent is None else indent
        self.sort_keys = config.output.sort_keys if sort_keys is None else sort_keys

    def format(self, response: BaseModel) -> str:
        payload = response.model_dump(mode="json")
        return json.dumps(payload, indent=self.indent, sort_keys=self.sort_keys, ensure_ascii=False) + "\n"


# =============================================================================
# FACTORY FUNCTION
# =============================================================================

def get_formatter(mode: OutputMode | str | None = None) -> ReportFormatter:
    """Factory function to get the appropriate formatter.

    Args:
        mode: "text", "json", or None for text

    Returns:
        ReportFormatter instance
    """
    if mode is None:
        mode = OutputMode.TEXT
    elif isinstance(mode, str):
        mode = OutputMode(mode.lower())

    formatters = {
        OutputMode.TEXT: TextFormatter,
        OutputMode.JSON: JsonFormatter,
    }
    return formatters[mode]()


__all__ = [
    "OutputMode",
    "ReportFormatter",
    "TextFormatter",
    "JsonFormatter",
    "get_formatter",
]
