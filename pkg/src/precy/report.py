"""Structured results returned by every verification pass."""

from dataclasses import dataclass, field
from typing import Any, Optional

from precy.scalars import format_scalar


def format_residual(residual):
    """Render a residual (scalar, sparse dict, or nested list) as JSON data.

    Sparse dicts become sorted ``[key, "p/q"]`` pairs so that output is
    byte-stable.
    """
    if residual is None:
        return None
    if isinstance(residual, dict):
        items = sorted(residual.items(), key=lambda kv: _sort_key(kv[0]))
        return [[_key_data(k), format_scalar(v)] for k, v in items if v != 0]
    if isinstance(residual, (list, tuple)):
        return [format_residual(r) for r in residual]
    if isinstance(residual, str):
        return residual
    return format_scalar(residual)


def _key_data(key):
    if isinstance(key, tuple):
        return list(key)
    return key


def _sort_key(key):
    return key if isinstance(key, tuple) else (key,)


@dataclass
class CheckReport:
    """Outcome of one exhaustive identity check.

    ``witness`` holds the first violating tuple of basis labels, and
    ``residual`` the nonzero value found there.
    """

    name: str
    passed: bool
    witness: Optional[tuple] = None
    residual: Any = None
    evaluated: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self):
        out = {
            "name": self.name,
            "passed": self.passed,
            "evaluated": self.evaluated,
            "witness": None if self.witness is None else list(self.witness),
            "residual": format_residual(self.residual),
        }
        if self.details:
            out["details"] = self.details
        return out

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        line = f"{status}  {self.name}  ({self.evaluated} evaluated)"
        if not self.passed and self.witness is not None:
            line += f"  witness={self.witness}"
        return line
