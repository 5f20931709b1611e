"""Pure-state discrete-time quantum walk on the square lattice.

Every step moves the walker by exactly one lattice unit, so after t steps
from the origin the occupied sites form the diamond ``|x| + |y| <= t`` with
``x + y + t`` even.  In the rotated coordinates ``u = (x + y + t) / 2``,
``v = (x - y + t) / 2`` that diamond is the dense square ``[0, t]^2``, and
:class:`WalkState` stores it as an array of shape ``(4, t+1, t+1)`` with
coin order (L, R, D, U).  Sites outside the array carry zero amplitude, so
the state reads like a sparse map from position to 4-vector while one step
stays a single matrix product plus four slice copies.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Mapping

import numpy as np
from numpy.typing import NDArray

from .coins import UNITARY_TOL, InvalidCoinError, is_unitary

__all__ = [
    "L", "R", "D", "U",
    "WalkState",
    "Distribution",
    "Marginals",
    "TruncationError",
    "initial_state",
    "apply_coin",
    "apply_shift",
    "step",
    "evolve",
    "trajectory",
    "position_distribution",
    "marginals",
    "dense_step_oracle",
    "compact",
]

L, R, D, U = 0, 1, 2, 3
COMPACT_THRESHOLD = 1e-300


class TruncationError(ValueError):
    """State support does not fit inside the requested box."""


@dataclass(frozen=True, eq=False)
class WalkState:
    """Amplitudes on one parity class of the lattice, in rotated coordinates.

    Array index ``[c, i, j]`` holds the coin-`c` amplitude of the site with
    ``u = u0 + i`` and ``v = v0 + j`` where ``u = (x + y + t - parity) / 2``
    and ``v = (x - y + t - parity) / 2``.  Walks started at the origin have
    parity 0.
    """

    amps: NDArray[np.complex128]
    u0: int = 0
    v0: int = 0
    step: int = 0
    parity: int = 0

    def __post_init__(self):
        if self.amps.ndim != 3 or self.amps.shape[0] != 4 or 0 in self.amps.shape:
            raise ValueError(f"amplitude array must have shape (4, nu, nv), got {self.amps.shape}")
        if self.step < 0:
            raise ValueError("step must be nonnegative")
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")

    @classmethod
    def from_amplitudes(cls, amplitudes: Mapping[tuple[int, int], Iterable[complex]], step: int = 0) -> WalkState:
        """Build a state from ``{(x, y): (aL, aR, aD, aU)}``.

        All sites with nonzero amplitude must share the parity of ``x + y + step``.
        """
        if not amplitudes:
            raise ValueError("a walk state needs at least one site")
        sites = {}
        for (x, y), vec in amplitudes.items():
            vec = np.asarray(vec, dtype=np.complex128)
            if vec.shape != (4,):
                raise ValueError(f"site {(x, y)} needs 4 amplitudes, got {vec.shape}")
            sites[int(x), int(y)] = vec
        live = {k: v for k, v in sites.items() if np.any(v != 0)} or dict([next(iter(sites.items()))])
        parities = {(x + y + step) % 2 for x, y in live}
        if len(parities) > 1:
            raise ValueError("sites with nonzero amplitude must share the parity of x + y + step")
        parity = parities.pop()
        us = [(x + y + step - parity) // 2 for x, y in live]
        vs = [(x - y + step - parity) // 2 for x, y in live]
        u0, v0 = min(us), min(vs)
        amps = np.zeros((4, max(us) - u0 + 1, max(vs) - v0 + 1), dtype=np.complex128)
        for u, v, vec in zip(us, vs, live.values()):
            amps[:, u - u0, v - v0] = vec
        return cls(amps, u0, v0, step, parity)

    def coordinates(self) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
        """Broadcastable x and y grids matching ``amps[c]``."""
        u = np.arange(self.u0, self.u0 + self.amps.shape[1])[:, None]
        v = np.arange(self.v0, self.v0 + self.amps.shape[2])[None, :]
        return u + v - self.step + self.parity, u - v

    def _index(self, x: int, y: int) -> tuple[int, int] | None:
        if (x + y + self.step - self.parity) % 2:
            return None
        i = (x + y + self.step - self.parity) // 2 - self.u0
        j = (x - y + self.step - self.parity) // 2 - self.v0
        if 0 <= i < self.amps.shape[1] and 0 <= j < self.amps.shape[2]:
            return i, j
        return None

    def amplitude(self, x: int, y: int) -> NDArray[np.complex128]:
        idx = self._index(x, y)
        if idx is None:
            return np.zeros(4, dtype=np.complex128)
        return self.amps[:, idx[0], idx[1]].copy()

    def __getitem__(self, pos: tuple[int, int]) -> NDArray[np.complex128]:
        return self.amplitude(*pos)

    def positions(self) -> list[tuple[int, int]]:
        """Sites carrying any nonzero amplitude, sorted by (x, y)."""
        x, y = np.broadcast_arrays(*self.coordinates())
        live = np.any(self.amps != 0, axis=0)
        return sorted(zip(x[live].tolist(), y[live].tolist()))

    def as_dict(self) -> dict[tuple[int, int], NDArray[np.complex128]]:
        return {p: self.amplitude(*p) for p in self.positions()}

    def norm_squared(self) -> float:
        return float(np.sum(self.amps.real ** 2 + self.amps.imag ** 2))

    def invariant_violations(self, norm_tol: float = 1e-10) -> list[str]:
        """Empty list iff normalization, support and parity all hold."""
        problems = []
        dev = abs(self.norm_squared() - 1.0)
        if dev >= norm_tol:
            problems.append(f"norm deviates from 1 by {dev:.3e}")
        x, y = self.coordinates()
        live = np.any(self.amps != 0, axis=0)
        if np.any(live & (np.abs(x) + np.abs(y) > self.step)):
            problems.append("amplitude outside |x|+|y| <= t")
        if self.parity and live.any():
            problems.append("amplitude on a site with x+y+t odd")
        return problems


@dataclass(frozen=True, eq=False)
class Distribution:
    """Position probabilities as parallel arrays of x, y and p."""

    x: NDArray[np.int64]
    y: NDArray[np.int64]
    p: NDArray[np.float64]

    @classmethod
    def from_dict(cls, probs: Mapping[tuple[int, int], float]) -> Distribution:
        keys = sorted(probs)
        return cls(np.array([k[0] for k in keys], dtype=np.int64),
                   np.array([k[1] for k in keys], dtype=np.int64),
                   np.array([probs[k] for k in keys], dtype=np.float64))

    def as_dict(self) -> dict[tuple[int, int], float]:
        """Nonzero entries keyed by site."""
        keep = self.p != 0
        return dict(zip(zip(self.x[keep].tolist(), self.y[keep].tolist()), self.p[keep].tolist()))

    def __getitem__(self, pos: tuple[int, int]) -> float:
        hit = (self.x == pos[0]) & (self.y == pos[1])
        return float(self.p[hit].sum())

    def total(self) -> float:
        return float(self.p.sum())

    def to_csv(self, fh=None) -> str | None:
        """Write ``x,y,p`` rows for every site with nonzero probability.

        Rows are sorted by x then y; probabilities use 17 significant digits.
        Returns the text when `fh` is None.
        """
        out = io.StringIO() if fh is None else fh
        out.write("x,y,p\n")
        keep = self.p != 0
        x, y, p = self.x[keep], self.y[keep], self.p[keep]
        for k in np.lexsort((y, x)):
            out.write(f"{x[k]},{y[k]},{p[k]:.17g}\n")
        return out.getvalue() if fh is None else None


@dataclass(frozen=True)
class Marginals:
    """Half-plane probabilities; the x = 0 column and y = 0 row count in neither side."""

    p_left: float
    p_right: float
    p_down: float
    p_up: float

    def as_dict(self) -> dict[str, float]:
        return {"p_left": self.p_left, "p_right": self.p_right,
                "p_down": self.p_down, "p_up": self.p_up}


def initial_state() -> WalkState:
    """``(|L> - |R> - |D> + |U>)/2`` at the origin."""
    amps = np.array([0.5, -0.5, -0.5, 0.5], dtype=np.complex128).reshape(4, 1, 1)
    return WalkState(amps)


def _as_coin(m) -> NDArray[np.complex128]:
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (4, 4):
        raise InvalidCoinError(f"walk coin must be 4x4, got shape {m.shape}")
    if not is_unitary(m, UNITARY_TOL):
        raise InvalidCoinError("walk coin is not unitary")
    return m


def apply_coin(s: WalkState, m) -> WalkState:
    """Multiply the 4-vector at every site by `m`."""
    m = _as_coin(m)
    _, nu, nv = s.amps.shape
    out = (m @ s.amps.reshape(4, nu * nv)).reshape(4, nu, nv)
    return replace(s, amps=out)


def apply_shift(s: WalkState) -> WalkState:
    """Move L/R/D/U components one site left/right/down/up.

    In rotated coordinates L stays put, R moves (+1, +1), D moves (0, +1)
    and U moves (+1, 0).
    """
    _, nu, nv = s.amps.shape
    out = np.zeros((4, nu + 1, nv + 1), dtype=np.complex128)
    out[L, :nu, :nv] = s.amps[L]
    out[R, 1:, 1:] = s.amps[R]
    out[D, :nu, 1:] = s.amps[D]
    out[U, 1:, :nv] = s.amps[U]
    return replace(s, amps=out, step=s.step + 1)


def step(s: WalkState, m) -> WalkState:
    return apply_shift(apply_coin(s, m))


def trajectory(s: WalkState, schedule: Iterable) -> Iterator[WalkState]:
    """Yield the state after each coin of `schedule`, in application order."""
    for m in schedule:
        s = step(s, m)
        yield s


def evolve(s: WalkState, schedule: Iterable) -> WalkState:
    """Apply the coins of `schedule` in order (first entry acts first)."""
    for s in trajectory(s, schedule):
        pass
    return s


def compact(s: WalkState, threshold: float = COMPACT_THRESHOLD) -> WalkState:
    """Trim the array to the smallest rectangle holding every amplitude above `threshold`."""
    big = np.any(np.abs(s.amps) > threshold, axis=0)
    if not big.any():
        return replace(s, amps=np.zeros((4, 1, 1), dtype=np.complex128))
    rows = np.flatnonzero(big.any(axis=1))
    cols = np.flatnonzero(big.any(axis=0))
    amps = s.amps[:, rows[0]:rows[-1] + 1, cols[0]:cols[-1] + 1].copy()
    amps[np.abs(amps) <= threshold] = 0
    return replace(s, amps=amps, u0=s.u0 + int(rows[0]), v0=s.v0 + int(cols[0]))


def position_distribution(s: WalkState) -> Distribution:
    """``P(x, y) = sum_c |amplitude(x, y, c)|^2`` over the stored sites."""
    probs = np.sum(s.amps.real ** 2 + s.amps.imag ** 2, axis=0)
    x, y = np.broadcast_arrays(*s.coordinates())
    return Distribution(x.ravel(), y.ravel(), probs.ravel())


def marginals(d: Distribution) -> Marginals:
    return Marginals(
        p_left=float(d.p[d.x < 0].sum()),
        p_right=float(d.p[d.x > 0].sum()),
        p_down=float(d.p[d.y < 0].sum()),
        p_up=float(d.p[d.y > 0].sum()),
    )


def dense_step_oracle(s: WalkState, m, radius: int) -> WalkState:
    """One walk step as an explicit matrix-vector product on a truncated box.

    Builds the full ``4(2r+1)^2`` square matrix of shift-after-coin, site by
    site, and applies it to the flattened state.  Independent of the sliced
    kernel used by :func:`step`; meant for equivalence tests only.
    """
    m = _as_coin(m)
    if radius < 1:
        raise ValueError("radius must be positive")
    for x, y in s.positions():
        if max(abs(x), abs(y)) > radius - 1:
            raise TruncationError(f"site {(x, y)} can leave the box of radius {radius}")
    n = 2 * radius + 1
    dim = 4 * n * n
    moves = {L: (-1, 0), R: (1, 0), D: (0, -1), U: (0, 1)}

    def index(c, x, y):
        return (c * n + (x + radius)) * n + (y + radius)

    op = np.zeros((dim, dim), dtype=np.complex128)
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            for c_in in range(4):
                for c_out in range(4):
                    dx, dy = moves[c_out]
                    tx, ty = x + dx, y + dy
                    if abs(tx) > radius or abs(ty) > radius:
                        continue
                    op[index(c_out, tx, ty), index(c_in, x, y)] += m[c_out, c_in]

    vec = np.zeros(dim, dtype=np.complex128)
    for (x, y), amp in s.as_dict().items():
        for c in range(4):
            vec[index(c, x, y)] = amp[c]
    out = (op @ vec).reshape(4, n, n)
    sites = {(x, y): out[:, x + radius, y + radius]
             for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)}
    return WalkState.from_amplitudes(sites, step=s.step + 1)
