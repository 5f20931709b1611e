"""Winner determination from directional marginals.

Players sit in quadrants A: I, B': II, C': III, D': IV.  A player wins when
the signs of ``p_right - p_left`` and ``p_up - p_down`` are compatible with
its quadrant; a tied axis (difference within the tie tolerance) is
compatible with both signs, which produces the joint wins.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .coins import Player
from .serialize import dumps
from .walk import Marginals

__all__ = ["Mode", "Verdict", "decide_winners", "QUADRANT_SIGNS", "DEFAULT_TOL"]

DEFAULT_TOL = 1e-9

QUADRANT_SIGNS = {
    Player.A: (1, 1),
    Player.Bprime: (-1, 1),
    Player.Cprime: (-1, -1),
    Player.Dprime: (1, -1),
}


class Mode(enum.Enum):
    SIGN = "sign"
    STRICT = "strict"

    @classmethod
    def parse(cls, value) -> Mode:
        if isinstance(value, Mode):
            return value
        aliases = {"sign": cls.SIGN, "sign-pattern": cls.SIGN,
                   "strict": cls.STRICT, "strict-four-way": cls.STRICT}
        try:
            return aliases[str(value)]
        except KeyError:
            raise ValueError(f"unknown verdict mode {value!r}") from None


@dataclass(frozen=True)
class Verdict:
    """Winner set plus the marginals it was decided from.

    ``four_way_unequal`` is only ever set in strict mode: both axes are tied,
    so all four quadrants are compatible, but ``p_right`` and ``p_up`` differ
    by more than the tolerance and the literal all-four-equal condition fails.
    """

    winners: frozenset[Player]
    marginals: Marginals
    tol: float
    mode: Mode
    four_way_unequal: bool = False

    def to_dict(self) -> dict:
        out = {"winners": [p.value for p in Player if p in self.winners]}
        out.update(self.marginals.as_dict())
        out["mode"] = self.mode.value
        out["tol"] = self.tol
        if self.mode is Mode.STRICT:
            out["four_way_unequal"] = self.four_way_unequal
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())


def _sign(diff: float, tol: float) -> int:
    if abs(diff) <= tol:
        return 0
    return 1 if diff > 0 else -1


def decide_winners(m: Marginals, tol: float = DEFAULT_TOL, mode=Mode.SIGN) -> Verdict:
    if tol < 0:
        raise ValueError("tie tolerance must be nonnegative")
    mode = Mode.parse(mode)
    sx = _sign(m.p_right - m.p_left, tol)
    sy = _sign(m.p_up - m.p_down, tol)
    winners = frozenset(
        p for p, (qx, qy) in QUADRANT_SIGNS.items()
        if sx in (0, qx) and sy in (0, qy)
    )
    unequal = (mode is Mode.STRICT and sx == 0 and sy == 0
               and abs(m.p_right - m.p_up) > tol)
    return Verdict(winners, m, tol, mode, unequal)
