"""Enumeration caps.

Caps are hard limits: exceeding one raises ``EnumerationTooLarge``; nothing is
silently truncated. ``ENDOCALC_CAPS`` overrides them, e.g.
``ENDOCALC_CAPS="torsion_order=500,word_bound=3"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Caps:
    torsion_order: int = 10**4
    subgroup_count: int = 10**5
    word_bound: int = 5
    slice_elements: int = 10**5
    ring_elements: int = 10**4


def parse_caps(text: str, base: Caps | None = None) -> Caps:
    base = base or Caps()
    known = {f.name for f in fields(Caps)}
    updates = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in known:
            raise ValueError(f"unknown cap {key!r}; known caps: {', '.join(sorted(known))}")
        updates[key] = int(value)
    return replace(base, **updates)


def default_caps() -> Caps:
    env = os.environ.get("ENDOCALC_CAPS")
    return parse_caps(env) if env else Caps()
