"""Search limits.

Defaults can be overridden per process through environment variables:

* ``SIERP_MAX_AUT``    max vertices for automorphism / isomorphism search
* ``SIERP_MAX_GROUP``  max number of elements in any enumerated permutation group
* ``SIERP_NO_NUMBA``   set to 1 to force the pure-numpy kernels
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Limits:
    max_aut_vertices: int = 40
    max_group_order: int = 10**6
    max_embedding_vertices: int = 10
    max_rotation_systems: int = 5 * 10**6

    def with_(self, **kw) -> "Limits":
        return replace(self, **kw)


def limits() -> Limits:
    """Current limits, with environment overrides applied."""
    base = Limits()
    return base.with_(
        max_aut_vertices=_env_int("SIERP_MAX_AUT", base.max_aut_vertices),
        max_group_order=_env_int("SIERP_MAX_GROUP", base.max_group_order),
    )
