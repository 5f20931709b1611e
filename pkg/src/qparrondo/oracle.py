"""Closed-form one-step amplitudes and probabilities.

With ``k = sin(2b) cos(a - g)`` the on-axis probabilities after one step
from the standard initial state are

    left  = (1 - k)^2 / 4
    right = down = (1 - k^2) / 4
    up    = (1 + k)^2 / 4

which is what the trigonometric forms below expand to.  The functions here
evaluate the trigonometric forms as written so that they check the engine
rather than restate it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coins import CoinParams, make_su2_coin, tensor_coin
from .walk import initial_state, position_distribution, step

__all__ = [
    "StepOneProbs",
    "step1_probabilities",
    "step1_amplitudes",
    "check_engine_against_oracle",
    "uniform_grid",
]


@dataclass(frozen=True)
class StepOneProbs:
    """Probabilities at (-1, 0), (1, 0), (0, -1), (0, 1) after one step."""

    p_left: float
    p_right: float
    p_down: float
    p_up: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_left, self.p_right, self.p_down, self.p_up)


def step1_probabilities(p: CoinParams) -> StepOneProbs:
    s2 = math.sin(2 * p.beta)
    d = p.alpha - p.gamma
    c1, c2 = math.cos(d), math.cos(2 * d)
    left = 0.25 * (1 + 0.5 * s2 ** 2 * c2 - 2 * s2 * c1 + 0.5 * s2 ** 2)
    right = 0.25 * (1 - 0.5 * s2 ** 2 - 0.5 * s2 ** 2 * c2)
    up = 0.25 * (1 + 0.5 * s2 ** 2 * c2 + 2 * s2 * c1 + 0.5 * s2 ** 2)
    return StepOneProbs(left, right, right, up)


def step1_amplitudes(p: CoinParams) -> tuple[complex, complex, complex, complex]:
    """Amplitudes at (-1, 0), (1, 0), (0, -1), (0, 1) after one step.

    The (0, 1) coefficient starts with ``e^{-2ig} sin^2 b``; writing
    ``e^{-2ia}`` there instead breaks unitarity of the expansion.
    """
    a, b, g = p.alpha, p.beta, p.gamma
    c, s = math.cos(b), math.sin(b)
    e = cmath.exp
    left = 0.5 * (e(2j * a) * c * c - 2 * e(1j * (a + g)) * c * s + e(2j * g) * s * s)
    mid = 0.5 * (e(1j * (a - g)) * c * s + c * c - s * s - e(-1j * (a - g)) * s * c)
    up = 0.5 * (e(-2j * g) * s * s + 2 * e(-1j * (a + g)) * c * s + e(-2j * a) * c * c)
    return (left, mid, mid, up)


def uniform_grid(n: int = 11, lo: float = -2 * math.pi, hi: float = 2 * math.pi) -> list[CoinParams]:
    """All triples on an n x n x n uniform grid over [lo, hi]^3, alpha slowest."""
    if n < 1:
        raise ValueError("grid needs at least one point per axis")
    axis = np.linspace(lo, hi, n)
    return [CoinParams(a, b, g) for a in axis for b in axis for g in axis]


def check_engine_against_oracle(grid: Iterable[CoinParams]) -> float:
    """Largest |engine - closed form| over the four on-axis one-step probabilities."""
    grid = list(grid)
    if not grid:
        raise ValueError("oracle check needs a nonempty grid")
    worst = 0.0
    s0 = initial_state()
    for p in grid:
        dist = position_distribution(step(s0, tensor_coin(make_su2_coin(p))))
        engine = (dist[-1, 0], dist[1, 0], dist[0, -1], dist[0, 1])
        closed = step1_probabilities(p).as_tuple()
        worst = max(worst, max(abs(x - y) for x, y in zip(engine, closed)))
    return worst
