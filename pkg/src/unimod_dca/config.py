"""Enumeration budgets.

Defaults can be overridden with the ``UNIMOD_DCA_BUDGET`` environment
variable, either a bare integer (applied to every cap) or a comma separated
list such as ``faces=50000,minors=10000000``.
"""

from __future__ import annotations

import dataclasses
import os

ENV_VAR = "UNIMOD_DCA_BUDGET"


@dataclasses.dataclass(frozen=True)
class Budget:
    minors: int = 5_000_000
    faces: int = 200_000
    vertices: int = 20_000
    lattice_points: int = 2_000_000
    hull_subsets: int = 2_000_000

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"budget {f.name} must be positive")

    def replace(self, **kw) -> "Budget":
        return dataclasses.replace(self, **{k: v for k, v in kw.items() if v is not None})


def parse_budget(text: str, base: Budget | None = None) -> Budget:
    base = base or Budget()
    text = text.strip()
    if not text:
        return base
    if text.isdigit():
        value = int(text)
        return Budget(**{f.name: value for f in dataclasses.fields(Budget)})
    names = {f.name for f in dataclasses.fields(Budget)}
    updates = {}
    for item in text.split(","):
        key, _, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if key not in names or not value.strip().isdigit():
            raise ValueError(f"bad budget entry {item!r}")
        updates[key] = int(value)
    return dataclasses.replace(base, **updates)


def default_budget() -> Budget:
    return parse_budget(os.environ.get(ENV_VAR, ""))
