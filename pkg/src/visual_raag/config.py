"""Search caps shared by the enumeration-heavy operations."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import InputError

CAPS_ENV = "VISUAL_RAAG_CAPS"


@dataclass(frozen=True)
class Caps:
    cycle_max_len: int = 20
    cycle_max_count: int = 10_000
    kernel_depth: int = 10
    cell_cap: int = 50_000
    # enumeration budget for kernel search (distinct normal forms per half)
    kernel_budget: int = 200_000

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or value <= 0:
                raise InputError(f"cap {f.name} must be a positive integer, got {value!r}")

    def override(self, text: str | None) -> "Caps":
        """Apply ``key=value,key=value`` overrides."""
        if not text:
            return self
        names = {f.name for f in fields(self)}
        updates = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in names:
                raise InputError(f"bad caps override {item!r}")
            try:
                updates[key] = int(value)
            except ValueError:
                raise InputError(f"cap {key} must be an integer") from None
        return replace(self, **updates)

    @classmethod
    def from_env(cls) -> "Caps":
        return cls().override(os.environ.get(CAPS_ENV))
