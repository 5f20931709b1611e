"""Parameterized SU(2)-type coins and their 4x4 two-qubit form.

The walker's coin space is ordered (L, R, D, U), identified with the
two-qubit computational basis (00, 01, 10, 11).  A 4x4 coin is the
Kronecker square of a 2x2 coin, so entry ``[2*i1 + i2, 2*j1 + j2]`` equals
``c[i1, j1] * c[i2, j2]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "CoinParams",
    "InvalidParameterError",
    "InvalidCoinError",
    "Player",
    "make_su2_coin",
    "tensor_coin",
    "player_coin",
    "player_matrix",
    "is_unitary",
    "HADAMARD",
]

UNITARY_TOL = 1e-12


class InvalidParameterError(ValueError):
    """A coin angle is NaN or infinite."""


class InvalidCoinError(ValueError):
    """A matrix offered as a coin is not unitary (or has the wrong shape)."""


@dataclass(frozen=True)
class CoinParams:
    """Angle triple (alpha, beta, gamma) in radians.

    Angles are kept exactly as given; no reduction mod 2*pi.
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError) as exc:
                raise InvalidParameterError(f"{name}={value!r} is not a real number") from exc
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name}={value!r} is not finite")
            object.__setattr__(self, name, value)

    @property
    def alpha_plus_gamma(self) -> float:
        return self.alpha + self.gamma

    @property
    def alpha_minus_gamma(self) -> float:
        return self.alpha - self.gamma

    def as_dict(self) -> dict[str, float]:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}


class Player(enum.Enum):
    """The four players, listed in quadrant order I..IV."""

    A = "A"
    Bprime = "Bprime"
    Cprime = "Cprime"
    Dprime = "Dprime"

    @classmethod
    def parse(cls, name: str | Player) -> Player:
        if isinstance(name, Player):
            return name
        key = str(name).strip()
        aliases = {"A": cls.A, "B": cls.Bprime, "B'": cls.Bprime, "C": cls.Cprime,
                   "C'": cls.Cprime, "D": cls.Dprime, "D'": cls.Dprime}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown player {name!r}") from None

    @property
    def label(self) -> str:
        return {"A": "A", "Bprime": "B'", "Cprime": "C'", "Dprime": "D'"}[self.value]


def make_su2_coin(p: CoinParams) -> NDArray[np.complex128]:
    """Return ``[[e^{ia} cos b, e^{ig} sin b], [e^{-ig} sin b, -e^{-ia} cos b]]``."""
    if not isinstance(p, CoinParams):
        p = CoinParams(*p)
    c, s = math.cos(p.beta), math.sin(p.beta)
    ea = complex(math.cos(p.alpha), math.sin(p.alpha))
    eg = complex(math.cos(p.gamma), math.sin(p.gamma))
    return np.array(
        [[ea * c, eg * s], [eg.conjugate() * s, -ea.conjugate() * c]],
        dtype=np.complex128,
    )


def _check_square(m, n: int) -> NDArray[np.complex128]:
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (n, n):
        raise InvalidCoinError(f"expected a {n}x{n} matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidCoinError("matrix has non-finite entries")
    return m


def tensor_coin(c) -> NDArray[np.complex128]:
    """Kronecker square ``c (x) c`` in (L, R, D, U) order."""
    c = _check_square(c, 2)
    if not is_unitary(c, UNITARY_TOL):
        raise InvalidCoinError("2x2 coin is not unitary")
    return np.kron(c, c)


def is_unitary(m, tol: float = UNITARY_TOL) -> bool:
    """True iff every entry of ``m m^dagger - I`` is within `tol` of zero."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    dev = m @ m.conj().T - np.eye(m.shape[0])
    return bool(np.max(np.abs(dev)) <= tol)


def player_coin(player: Player, free: CoinParams) -> CoinParams:
    """Impose `player`'s structural constraint on the free angles.

    A: alpha = 0.  B': gamma = 0.  C': alpha = -gamma.  D': alpha = gamma.
    beta always passes through unchanged.
    """
    player = Player.parse(player)
    if player is Player.A:
        return replace(free, alpha=0.0)
    if player is Player.Bprime:
        return replace(free, gamma=0.0)
    if player is Player.Cprime:
        return replace(free, alpha=-free.gamma)
    return replace(free, alpha=free.gamma)


def player_matrix(player: Player, free: CoinParams) -> NDArray[np.complex128]:
    """4x4 coin of `player` built from the free angles."""
    return tensor_coin(make_su2_coin(player_coin(player, free)))


HADAMARD = make_su2_coin(CoinParams(0.0, math.pi / 4, 0.0))
