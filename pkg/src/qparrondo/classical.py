"""Classical capital-dependent Parrondo games.

Game A wins with probability ``p``.  Game B wins with ``p0`` when the
capital is a multiple of 3 and ``p1`` otherwise; for negative capital the
residue is taken in {0, 1, 2}.  Each round adds or subtracts one unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .serialize import dumps

__all__ = [
    "ClassicalParams",
    "LITERATURE_PRESET",
    "Periodic",
    "RandomMix",
    "ReducibleChainError",
    "SimulationResult",
    "simulate_capital",
    "expected_capital",
    "stationary_distribution",
    "exact_drift",
    "exact_drift_B",
    "paradox_demo",
    "report_json",
]


class ReducibleChainError(ValueError):
    """The capital-mod-3 chain is not irreducible, so its stationary law is not unique."""


@dataclass(frozen=True)
class ClassicalParams:
    p: float = 0.5
    p0: float = 0.5
    p1: float = 0.5

    def __post_init__(self):
        for name in ("p", "p0", "p1"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value} is not a probability")
            object.__setattr__(self, name, value)

    def b_probs(self) -> np.ndarray:
        """Game-B win probability indexed by capital mod 3."""
        return np.array([self.p0, self.p1, self.p1])

    def a_probs(self) -> np.ndarray:
        return np.full(3, self.p)


# Harmer-Abbott values with bias 0.005; not data from the quantum game.
LITERATURE_PRESET = ClassicalParams(p=0.495, p0=0.095, p1=0.745)


@dataclass(frozen=True)
class Periodic:
    """Deterministic repetition of a pattern such as ``"ABB"``."""

    pattern: str

    def __post_init__(self):
        if not self.pattern or set(self.pattern) - {"A", "B"}:
            raise ValueError("pattern must be a nonempty string over 'A' and 'B'")

    def __call__(self, n: int) -> str:
        return self.pattern[n % len(self.pattern)]


@dataclass(frozen=True)
class RandomMix:
    """Each round independently plays A with probability `prob_a`."""

    prob_a: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.prob_a <= 1.0:
            raise ValueError("prob_a must be a probability")


PlaySequence = Union[Periodic, RandomMix, Callable[[int], str]]


@dataclass(frozen=True)
class SimulationResult:
    mean: float
    stderr: float
    rounds: int
    trials: int

    @property
    def drift(self) -> float:
        return self.mean / self.rounds

    @property
    def drift_stderr(self) -> float:
        return self.stderr / self.rounds


def _round_probs(params: ClassicalParams, seq: PlaySequence, n: int, residue: np.ndarray,
                 rng: np.random.Generator) -> np.ndarray:
    if isinstance(seq, RandomMix):
        play_a = rng.random(residue.shape[0]) < seq.prob_a
        return np.where(play_a, params.p, params.b_probs()[residue])
    choice = seq(n)
    if choice == "A":
        return np.full(residue.shape[0], params.p)
    if choice == "B":
        return params.b_probs()[residue]
    raise ValueError(f"play sequence returned {choice!r} at round {n}")


def simulate_capital(params: ClassicalParams, seq: PlaySequence, rounds: int, trials: int,
                     seed: int = 0) -> SimulationResult:
    """Monte Carlo mean final capital over independent runs started at capital 0."""
    if rounds < 1 or trials < 1:
        raise ValueError("rounds and trials must be positive")
    rng = np.random.default_rng(seed)
    capital = np.zeros(trials, dtype=np.int64)
    for n in range(rounds):
        probs = _round_probs(params, seq, n, np.mod(capital, 3), rng)
        capital += np.where(rng.random(trials) < probs, 1, -1)
    mean = float(capital.mean())
    stderr = float(capital.std(ddof=1) / math.sqrt(trials)) if trials > 1 else float("nan")
    return SimulationResult(mean, stderr, rounds, trials)


def _step_matrix(win: np.ndarray) -> np.ndarray:
    """Transition matrix on capital mod 3 for per-residue win probabilities."""
    t = np.zeros((3, 3))
    for s in range(3):
        t[s, (s + 1) % 3] += win[s]
        t[s, (s - 1) % 3] += 1 - win[s]
    return t


def _win_vector(params: ClassicalParams, seq: PlaySequence, n: int) -> np.ndarray:
    if isinstance(seq, RandomMix):
        return seq.prob_a * params.a_probs() + (1 - seq.prob_a) * params.b_probs()
    choice = seq(n)
    if choice not in ("A", "B"):
        raise ValueError(f"play sequence returned {choice!r} at round {n}")
    return params.a_probs() if choice == "A" else params.b_probs()


def expected_capital(params: ClassicalParams, seq: PlaySequence, rounds: int) -> float:
    """Exact expected capital after `rounds`, propagating the law of capital mod 3."""
    dist = np.array([1.0, 0.0, 0.0])
    total = 0.0
    for n in range(rounds):
        win = _win_vector(params, seq, n)
        total += float(dist @ (2 * win - 1))
        dist = dist @ _step_matrix(win)
    return total


def _irreducible(t: np.ndarray) -> bool:
    reach = (t > 0).astype(int) + np.eye(len(t), dtype=int)
    for _ in range(len(t)):
        reach = ((reach @ reach) > 0).astype(int)
    return bool(reach.all())


def stationary_distribution(t: np.ndarray) -> np.ndarray:
    """Unique stationary law of an irreducible stochastic matrix."""
    t = np.asarray(t, dtype=float)
    if not _irreducible(t):
        raise ReducibleChainError("chain is reducible")
    n = len(t)
    a = np.vstack([t.T - np.eye(n), np.ones(n)])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(a, b, rcond=None)
    return pi


def exact_drift(params: ClassicalParams, seq: Periodic | RandomMix) -> float:
    """Long-run expected gain per round for a periodic pattern or random mixing."""
    if isinstance(seq, RandomMix):
        win = _win_vector(params, seq, 0)
        return float(stationary_distribution(_step_matrix(win)) @ (2 * win - 1))
    k = len(seq.pattern)
    wins = [_win_vector(params, seq, j) for j in range(k)]
    # states (residue, phase), phase advancing by one each round
    t = np.zeros((3 * k, 3 * k))
    for j, win in enumerate(wins):
        step = _step_matrix(win)
        nxt = (j + 1) % k
        t[3 * j:3 * j + 3, 3 * nxt:3 * nxt + 3] = step
    pi = stationary_distribution(t)
    gain = np.concatenate([2 * w - 1 for w in wins])
    return float(pi @ gain)


def exact_drift_B(params: ClassicalParams) -> float:
    return exact_drift(params, Periodic("B"))


def paradox_demo(params: ClassicalParams = LITERATURE_PRESET, mix: PlaySequence = RandomMix(0.5),
                 rounds: int = 1000, trials: int = 10_000, seed: int = 0) -> dict:
    """Drifts of all-A, all-B and mixed play, with the paradox flag.

    The flag is raised when all-A and all-B each lose and the mix wins, each
    by more than three standard errors of the Monte Carlo drift.
    """
    sequences = {"A": Periodic("A"), "B": Periodic("B"), "mixed": mix}
    ss = np.random.SeedSequence(seed).spawn(3)
    sims = {name: simulate_capital(params, seq, rounds, trials, int(s.generate_state(1)[0]))
            for (name, seq), s in zip(sequences.items(), ss)}
    exact = {}
    for name, seq in sequences.items():
        try:
            exact[name] = exact_drift(params, seq) if isinstance(seq, (Periodic, RandomMix)) else None
        except ReducibleChainError:
            exact[name] = None
    d = {k: v.drift for k, v in sims.items()}
    e = {k: v.drift_stderr for k, v in sims.items()}
    paradox = (d["A"] < -3 * e["A"]) and (d["B"] < -3 * e["B"]) and (d["mixed"] > 3 * e["mixed"])
    return {
        "drift_A": d["A"],
        "drift_B": d["B"],
        "drift_mixed": d["mixed"],
        "stderrs": {"A": e["A"], "B": e["B"], "mixed": e["mixed"]},
        "exact": {"A": exact["A"], "B": exact["B"], "mixed": exact["mixed"]},
        "expected_finite_horizon": {
            name: expected_capital(params, seq, rounds) / rounds for name, seq in sequences.items()
        },
        "paradox": bool(paradox),
        "params": {"p": params.p, "p0": params.p0, "p1": params.p1},
        "rounds": rounds,
        "trials": trials,
        "seed": seed,
    }


def report_json(report: dict) -> str:
    return dumps(report)
