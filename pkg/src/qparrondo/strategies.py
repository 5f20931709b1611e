"""Coin schedules for solo, alternating and combined play, and full games.

A schedule lists 4x4 coins in application order: entry 0 acts on the
initial state first.  Operator strings written right-to-left, such as
``X Y ... X Y |psi>``, therefore correspond to the schedule ``[Y, X, ..., Y, X]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Sequence

import numpy as np
from numpy.typing import NDArray

from .coins import CoinParams, Player, player_coin, player_matrix
from .rules import DEFAULT_TOL, Mode, Verdict, decide_winners
from .walk import (
    Marginals,
    WalkState,
    evolve,
    initial_state,
    marginals,
    position_distribution,
    trajectory,
)

__all__ = [
    "EPSILON_MIN",
    "Kind",
    "ScheduleError",
    "Schedule",
    "StrategySpec",
    "build_solo",
    "build_alternating",
    "build_combined",
    "combined_coin",
    "build_schedule",
    "play",
    "run_game",
    "marginals_at",
]

# smallest "allowed" coin angle for the epsilon strategies
EPSILON_MIN = 1e-3


class ScheduleError(ValueError):
    """A strategy cannot be turned into a schedule."""


class Kind(enum.Enum):
    SOLO = "solo"
    ALTERNATING = "alternating"
    COMBINED = "combined"

    @classmethod
    def parse(cls, value) -> Kind:
        if isinstance(value, Kind):
            return value
        aliases = {"solo": cls.SOLO, "alternating": cls.ALTERNATING,
                   "alternating-level-i": cls.ALTERNATING, "combined": cls.COMBINED,
                   "combined-per-step": cls.COMBINED}
        try:
            return aliases[str(value).lower()]
        except KeyError:
            raise ScheduleError(f"unknown strategy kind {value!r}") from None


def _describe(player: Player, free: CoinParams) -> str:
    p = player_coin(player, free)
    return f"{player.label}(alpha={p.alpha:.6g},beta={p.beta:.6g},gamma={p.gamma:.6g})"


@dataclass(frozen=True)
class Schedule:
    coins: tuple[NDArray[np.complex128], ...] = ()
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.coins) != len(self.provenance):
            raise ScheduleError("provenance length must equal schedule length")

    def __len__(self) -> int:
        return len(self.coins)

    def __iter__(self) -> Iterator[NDArray[np.complex128]]:
        return iter(self.coins)

    def __getitem__(self, i):
        return self.coins[i]


@dataclass(frozen=True)
class StrategySpec:
    """Who plays, with which free angles, how, and for how many steps.

    ``params[i]`` are the free angles of ``players[i]``; each player's
    structural constraint is imposed when its coin is built.  With
    ``level_two`` set the players have agreed on one shared triple.
    """

    kind: Kind
    players: tuple[Player, ...]
    params: tuple[CoinParams, ...]
    steps: int
    level_two: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        object.__setattr__(self, "players", tuple(Player.parse(p) for p in self.players))
        object.__setattr__(self, "params", tuple(self.params))
        if not 1 <= len(self.players) <= 4:
            raise ScheduleError("a strategy needs one to four players")
        if len(set(self.players)) != len(self.players):
            raise ScheduleError("players must be distinct")
        if len(self.params) != len(self.players):
            raise ScheduleError("need one parameter triple per player")
        if int(self.steps) != self.steps or self.steps < 0:
            raise ScheduleError("steps must be a nonnegative integer")
        if self.level_two and len(set(self.params)) > 1:
            raise ScheduleError("level-two cooperation requires one shared parameter triple")
        if self.kind is Kind.SOLO and len(self.players) != 1:
            raise ScheduleError("solo play takes exactly one player")
        if self.kind is Kind.ALTERNATING and self.steps % len(self.players):
            raise ScheduleError(
                f"alternating play of {len(self.players)} players needs a step count "
                f"divisible by {len(self.players)}, got {self.steps}; otherwise one "
                "player's coin is used more often than the others'")

    @classmethod
    def shared(cls, kind, players: Sequence, params: CoinParams, steps: int) -> StrategySpec:
        """Level-two cooperation: every player uses the same free angles."""
        return cls(kind, tuple(players), (params,) * len(players), steps, level_two=True)

    def with_steps(self, steps: int) -> StrategySpec:
        return replace(self, steps=steps)


def build_solo(spec: StrategySpec) -> Schedule:
    if len(spec.players) != 1:
        raise ScheduleError("solo play takes exactly one player")
    player, free = spec.players[0], spec.params[0]
    m = player_matrix(player, free)
    return Schedule((m,) * spec.steps, (_describe(player, free),) * spec.steps)


def build_alternating(spec: StrategySpec) -> Schedule:
    """Cycle through the players' coins, first listed player first."""
    if spec.kind is not Kind.ALTERNATING:
        raise ScheduleError("build_alternating needs an alternating strategy")
    k = len(spec.players)
    if spec.steps % k:
        raise ScheduleError(f"steps={spec.steps} is not divisible by {k} players")
    mats = [player_matrix(p, f) for p, f in zip(spec.players, spec.params)]
    names = [_describe(p, f) for p, f in zip(spec.players, spec.params)]
    return Schedule(tuple(mats[i % k] for i in range(spec.steps)),
                    tuple(names[i % k] for i in range(spec.steps)))


def combined_coin(players: Sequence[Player], params: Sequence[CoinParams]) -> NDArray[np.complex128]:
    """Product of the players' coins with the first listed acting first (rightmost)."""
    out = np.eye(4, dtype=np.complex128)
    for p, f in zip(players, params):
        out = player_matrix(p, f) @ out
    return out


def build_combined(spec: StrategySpec) -> Schedule:
    if spec.kind is not Kind.COMBINED:
        raise ScheduleError("build_combined needs a combined strategy")
    m = combined_coin(spec.players, spec.params)
    name = " then ".join(_describe(p, f) for p, f in zip(spec.players, spec.params))
    return Schedule((m,) * spec.steps, (name,) * spec.steps)


def build_schedule(spec: StrategySpec) -> Schedule:
    if spec.kind is Kind.SOLO:
        return build_solo(spec)
    if spec.kind is Kind.ALTERNATING:
        return build_alternating(spec)
    return build_combined(spec)


def play(spec: StrategySpec) -> WalkState:
    """Final walk state after running the spec's schedule from the standard initial state."""
    return evolve(initial_state(), build_schedule(spec))


def run_game(spec: StrategySpec, tol: float = DEFAULT_TOL, mode=Mode.SIGN) -> Verdict:
    return decide_winners(marginals(position_distribution(play(spec))), tol, mode)


def marginals_at(spec: StrategySpec, steps: Iterable[int]) -> dict[int, Marginals]:
    """Marginals after each requested step count, from a single evolution.

    Every schedule here is prefix-consistent, so the state after t steps of
    the longest schedule is the state a t-step game would produce.
    """
    wanted = sorted(set(int(t) for t in steps))
    if not wanted:
        return {}
    for t in wanted:
        spec.with_steps(t)  # validates divisibility
    schedule = build_schedule(spec.with_steps(wanted[-1]))
    out = {}
    if wanted[0] == 0:
        out[0] = marginals(position_distribution(initial_state()))
    for s in trajectory(initial_state(), schedule):
        if s.step in wanted:
            out[s.step] = marginals(position_distribution(s))
    return out
