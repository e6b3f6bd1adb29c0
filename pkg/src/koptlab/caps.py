"""Size caps for the exact solvers.

Every exponential routine refuses inputs beyond its cap instead of silently
hanging.  Caps can be overridden per call, or globally through the
KOPTLAB_CAP_EDGES environment variable (which rescales the edge-based caps).
"""

import os

ORIENT_ALL_EDGES = 20
EXHAUSTIVE_VERTICES = 20
TRIANGLE_COUNT = 200
ALPHA_PRIME_EDGES = 24
SATURABLE_EDGES = 12
SATURABLE_PALETTE = 6
DECOMP_SEARCH_EDGES = 10
KERNEL_VERTICES = 20
SOURCE_EXHAUSTIVE_VERTICES = 8

_ENV_VAR = "KOPTLAB_CAP_EDGES"


class CapExceeded(RuntimeError):
    """An exact solver refused an input larger than its configured cap."""


def edge_cap(default: int, override: int | None = None) -> int:
    """Resolve an edge-based cap: explicit override > env var > default."""
    if override is not None:
        return override
    env = os.environ.get(_ENV_VAR)
    if env is not None:
        return int(env)
    return default


def require(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise CapExceeded(f"{what}: size {value} exceeds cap {cap}")
