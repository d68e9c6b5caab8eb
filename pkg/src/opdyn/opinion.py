"""Numerical kernel: tolerance-guarded convergence updates on two opinion dimensions.

All operations are pure functions over values in [0, 1]. The guard compares
with <= so that a distance exactly at the tolerance is accepted; no epsilon
slop anywhere — determinism over forgiveness.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpinionPair:
    """An agent's two opinion values, each in [0, 1]."""

    welfare: float
    security: float


@dataclass(frozen=True)
class UpdateParams:
    """Tolerance threshold and convergence step fraction for guarded updates."""

    tolerance: float
    convergence: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.tolerance <= 1.0:
            raise ValueError(f"tolerance must be in [0, 1], got {self.tolerance}")
        if not 0.0 < self.convergence <= 0.5:
            raise ValueError(f"convergence must be in (0, 0.5], got {self.convergence}")


def guard(own: float, received: float, tolerance: float) -> bool:
    """True iff the received value is within tolerance of the own value."""
    return abs(own - received) <= tolerance


def bc_update_dimension(own: float, received: float, params: UpdateParams) -> float:
    """Move ``own`` a fraction of the gap toward ``received`` if the guard passes."""
    if guard(own, received, params.tolerance):
        return own + params.convergence * (received - own)
    return own


def bc_update_pair(own: OpinionPair, received: OpinionPair, params: UpdateParams) -> OpinionPair:
    """Guarded update of both dimensions, each gated independently.

    A failing guard on one dimension does not block the other.
    """
    return OpinionPair(
        welfare=bc_update_dimension(own.welfare, received.welfare, params),
        security=bc_update_dimension(own.security, received.security, params),
    )


def unguarded_update_pair(own: OpinionPair, received: OpinionPair, m: float) -> OpinionPair:
    """Move both dimensions toward ``received`` with no tolerance guard.

    m = 1 copies the received pair exactly (full-adoption mode); otherwise
    m follows the usual (0, 0.5] convergence range.
    """
    if not (0.0 < m <= 0.5 or m == 1.0):
        raise ValueError(f"m must be in (0, 0.5] or exactly 1, got {m}")
    if m == 1.0:
        return OpinionPair(welfare=received.welfare, security=received.security)
    return OpinionPair(
        welfare=own.welfare + m * (received.welfare - own.welfare),
        security=own.security + m * (received.security - own.security),
    )
