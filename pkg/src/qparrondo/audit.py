"""Grid verification of the qualitative statements made about the four-player game.

Each :class:`Claim` bundles one or more :class:`Clause` objects.  A clause
fixes a strategy kind, one or more player orderings, a parameter grid, the
step counts to look at and a predicate on the resulting verdicts.  Running
the audit evaluates every (grid point, t) pair and counts how often the
predicate holds.  Nothing is assumed to be true; the report is the outcome.

Companion clauses are measured alongside a claim (for instance the up/down
tie next to a left/right symmetry statement) but are reported separately and
do not enter the claim's holds/fails counts.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .coins import CoinParams, Player, make_su2_coin, tensor_coin
from .oracle import step1_probabilities
from .rules import DEFAULT_TOL, Mode, Verdict, decide_winners
from .serialize import dumps
from .strategies import EPSILON_MIN, Kind, StrategySpec, marginals_at
from .walk import Marginals, initial_state, marginals, position_distribution, step

__all__ = [
    "GridConfig",
    "Clause",
    "Claim",
    "ClaimReport",
    "PointRecord",
    "AuditError",
    "registry",
    "audit",
    "replay",
    "CLAIM_IDS",
]

PI = math.pi
A, B, C, D = Player.A, Player.Bprime, Player.Cprime, Player.Dprime
MAX_COUNTEREXAMPLES = 10
CLAIM_IDS = tuple(f"C{i}" for i in range(1, 11))


class AuditError(ValueError):
    """Bad audit request (unknown or empty claim selection)."""


@dataclass(frozen=True)
class GridConfig:
    n_beta: int = 6          # interior points of (0, pi/2)
    n_angle: int = 5         # points on each interval quoted for a claim
    n_wide: int = 9          # points on [-2pi, 2pi] for unconstrained opponents
    steps: tuple[int, ...] = (2, 10, 20, 50)
    tol: float = DEFAULT_TOL
    epsilon: float = EPSILON_MIN
    mode: Mode = Mode.SIGN

    def __post_init__(self):
        for name in ("n_beta", "n_angle", "n_wide"):
            if getattr(self, name) < 1:
                raise AuditError(f"{name} must be positive")
        if not self.steps or any(t < 0 for t in self.steps):
            raise AuditError("steps must be a nonempty list of nonnegative integers")
        object.__setattr__(self, "steps", tuple(sorted(set(int(t) for t in self.steps))))
        object.__setattr__(self, "mode", Mode.parse(self.mode))


def interval(lo: float, hi: float, n: int, left: bool = True, right: bool = True) -> tuple[float, ...]:
    """`n` evenly spaced points of an interval, endpoints included or not."""
    pts = np.linspace(lo, hi, n + (not left) + (not right))
    if not left:
        pts = pts[1:]
    if not right:
        pts = pts[:-1]
    return tuple(float(v) for v in pts)


def _multiple_of(k: int, steps: Iterable[int]) -> tuple[int, ...]:
    """Smallest multiple of k at or above each t (alternating play needs equal coin use)."""
    return tuple(sorted({k * math.ceil(t / k) for t in steps}))


# --- parameter builders: grid point -> free angles per player -----------------

def _solo_triple(point: dict) -> CoinParams:
    return CoinParams(point.get("alpha", 0.0), point["beta"], point.get("gamma", 0.0))


def solo_params(player: Player):
    def build(point):
        return {player: _solo_triple(point)}
    return build


def shared_params(players: Sequence[Player]):
    def build(point):
        triple = _solo_triple(point)
        return {p: triple for p in players}
    return build


_SUFFIX = {A: "A", B: "B", C: "C", D: "D"}


def per_player_params(players: Sequence[Player]):
    """Keys ``alpha_X`` / ``gamma_X`` hold player X's own angles; beta is common."""
    def build(point):
        return {p: CoinParams(point.get(f"alpha_{_SUFFIX[p]}", 0.0), point["beta"],
                              point.get(f"gamma_{_SUFFIX[p]}", 0.0)) for p in players}
    return build


# --- predicates ------------------------------------------------------------

def lr_tie(vs: Sequence[Verdict]) -> bool:
    m = vs[0].marginals
    return abs(m.p_left - m.p_right) <= vs[0].tol


def ud_tie(vs: Sequence[Verdict]) -> bool:
    m = vs[0].marginals
    return abs(m.p_up - m.p_down) <= vs[0].tol


def left_up_tie(vs: Sequence[Verdict]) -> bool:
    m = vs[0].marginals
    return abs(m.p_left - m.p_up) <= vs[0].tol


def both_ties(vs):
    return lr_tie(vs) and ud_tie(vs)


def dominates(x: int, y: int):
    """``x`` = +1: right beats left by more than tol; -1: left beats right.  Same for y."""
    def pred(vs):
        m, tol = vs[0].marginals, vs[0].tol
        dx, dy = m.p_right - m.p_left, m.p_up - m.p_down
        return x * dx > tol and y * dy > tol
    return pred


def solo_winner(player: Player):
    def pred(vs):
        return vs[0].winners == frozenset({player})
    return pred


def joint_winners(*players: Player):
    def pred(vs):
        return frozenset(players) <= vs[0].winners
    return pred


def beats(player: Player, *others: Player):
    def pred(vs):
        w = vs[0].winners
        return player in w and not any(o in w for o in others)
    return pred


def same_joint_verdict(*players: Player):
    """Every ordering yields the same winner set, and it contains all of `players`."""
    def pred(vs):
        first = vs[0].winners
        return all(v.winners == first for v in vs) and frozenset(players) <= first
    return pred


def _rotations(players: Sequence[Player]) -> tuple[tuple[Player, ...], ...]:
    return tuple(tuple(players[i:]) + tuple(players[:i]) for i in range(len(players)))


# --- data model ------------------------------------------------------------

@dataclass(frozen=True)
class Clause:
    label: str
    kind: Kind
    orders: tuple[tuple[Player, ...], ...]
    axes: tuple[tuple[str, tuple[float, ...]], ...]
    make_params: Callable[[dict], dict]
    predicate: Callable[[Sequence[Verdict]], bool]
    steps: tuple[int, ...]
    fixed: tuple[tuple[str, float], ...] = ()
    where: Callable[[dict], bool] | None = None
    level_two: bool = False
    companion: bool = False

    def points(self) -> list[dict]:
        """Grid points in row-major order of `axes`, after the `where` filter."""
        names = [a for a, _ in self.axes]
        out = []
        for values in itertools.product(*(v for _, v in self.axes)):
            point = dict(self.fixed)
            point.update(zip(names, values))
            if self.where is None or self.where(point):
                out.append(point)
        return out

    def spec(self, point: dict, order: Sequence[Player], t: int) -> StrategySpec:
        params = self.make_params(point)
        return StrategySpec(self.kind, tuple(order), tuple(params[p] for p in order), t,
                            level_two=self.level_two)

    def run(self, point: dict, steps: Sequence[int], tol: float, mode: Mode) -> dict[int, list[Verdict]]:
        """Verdicts per step count, one per ordering."""
        per_order = [marginals_at(self.spec(point, order, max(steps)), steps) for order in self.orders]
        return {t: [decide_winners(m[t], tol, mode) for m in per_order] for t in steps}


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    clauses: tuple[Clause, ...]
    analytic: Callable[[GridConfig], dict] | None = None


@dataclass
class PointRecord:
    claim: str
    clause: int
    params: dict
    t: int
    holds: bool
    verdicts: list[Verdict]
    orders: tuple[tuple[Player, ...], ...]
    companion: bool = False

    def runs(self) -> list[dict]:
        return [{"order": [p.value for p in o],
                 "winners": [p.value for p in Player if p in v.winners],
                 "marginals": v.marginals.as_dict()} for o, v in zip(self.orders, self.verdicts)]

    def to_dict(self) -> dict:
        out = {"claim": self.claim, "clause": self.clause, "params": self.params, "t": self.t,
               "holds": self.holds, "marginals": self.verdicts[0].marginals.as_dict()}
        if self.companion:
            out["companion"] = True
        if len(self.verdicts) > 1:
            out["runs"] = self.runs()
        return out


@dataclass
class ClaimReport:
    claim: str
    description: str
    grid_points: int = 0
    steps: list[list[int]] = field(default_factory=list)
    evaluations: int = 0
    holds_count: int = 0
    fails_count: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    clauses: list[dict] = field(default_factory=list)
    companions: list[dict] = field(default_factory=list)
    analytic: dict | None = None
    incomplete: bool = False
    wall_time: float = 0.0
    points: list[PointRecord] = field(default_factory=list, repr=False)

    @property
    def holds_fraction(self) -> float:
        return self.holds_count / self.evaluations if self.evaluations else float("nan")

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "description": self.description,
            "grid_points": self.grid_points,
            "evaluations": self.evaluations,
            "holds_count": self.holds_count,
            "fails_count": self.fails_count,
            "holds_fraction": self.holds_fraction if self.evaluations else None,
            "clauses": self.clauses,
            "companions": self.companions,
            "counterexamples": self.counterexamples,
            "analytic": self.analytic,
            "incomplete": self.incomplete,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, timing: bool = False) -> str:
        return dumps(self.to_dict(timing))


# --- first-step identity used by C2 and C6 --------------------------------------

def _first_step_check(points: Iterable[CoinParams], tol: float) -> dict:
    """Engine and closed form against ``p_up - p_left = sin(2b) cos(a - g)`` at t = 1."""
    residual = 0.0
    n = contradicting = 0
    s0 = initial_state()
    for p in points:
        predicted = math.sin(2 * p.beta) * math.cos(p.alpha - p.gamma)
        closed = step1_probabilities(p)
        m = marginals(position_distribution(step(s0, tensor_coin(make_su2_coin(p)))))
        residual = max(residual, abs((m.p_up - m.p_left) - predicted),
                       abs((closed.p_up - closed.p_left) - predicted))
        n += 1
        contradicting += abs(predicted) > tol
    return {
        "t": 1,
        "identity": "p_up - p_left = sin(2*beta)*cos(alpha - gamma)",
        "points": n,
        "max_residual": residual,
        "points_with_p_up_ne_p_left": contradicting,
    }


# --- registry ----------------------------------------------------------------

def registry(cfg: GridConfig | None = None) -> list[Claim]:
    cfg = cfg or GridConfig()
    beta = ("beta", interval(0, PI / 2, cfg.n_beta, False, False))
    wide = interval(-2 * PI, 2 * PI, cfg.n_wide)
    n = cfg.n_angle
    eps = cfg.epsilon
    steps = cfg.steps
    steps_t1 = tuple(sorted(set(steps) | {1}))
    above_eps = interval(eps, PI, n, left=False)

    def solo(label, player, axes, pred, fixed=(), s=steps, companion=False):
        return Clause(label, Kind.SOLO, ((player,),), tuple(axes) + (beta,), solo_params(player),
                      pred, s, fixed=tuple(fixed), companion=companion)

    claims = []

    claims.append(Claim(
        "C1", "unbiased coin (alpha = gamma = 0) gives a left/right symmetric distribution",
        (
            solo("p_left == p_right with alpha = gamma = 0", A, (), lr_tie, fixed=(("alpha", 0.0), ("gamma", 0.0))),
            solo("up/down tie with alpha = gamma = 0", A, (), ud_tie,
                 fixed=(("alpha", 0.0), ("gamma", 0.0)), companion=True),
        ),
    ))

    claims.append(Claim(
        "C2", "left-upward symmetry p_left == p_up when alpha = gamma",
        (
            solo("p_left == p_up with alpha = gamma", D, (("gamma", wide),), left_up_tie, s=steps_t1),
            solo("p_left == p_up with cos(alpha - gamma) = 0", A,
                 (("gamma", (-3 * PI / 2, -PI / 2, PI / 2, 3 * PI / 2)),), left_up_tie,
                 s=steps_t1, companion=True),
        ),
        analytic=lambda c: _first_step_check(
            [CoinParams(g, b, g) for g in wide for b in interval(0, PI / 2, c.n_beta, False, False)], c.tol),
    ))

    claims.append(Claim(
        "C3", "player A's coin: p_left > p_right and p_down > p_up for -2pi <= gamma <= -pi",
        (solo("A solo, gamma in [-2pi, -pi]", A, (("gamma", interval(-2 * PI, -PI, n)),), dominates(-1, -1)),),
    ))

    claims.append(Claim(
        "C4", "player B''s coin: p_left < p_right and p_down > p_up for pi <= alpha <= 2pi",
        (solo("B' solo, alpha in [pi, 2pi]", B, (("alpha", interval(PI, 2 * PI, n)),), dominates(1, -1)),),
    ))

    claims.append(Claim(
        "C5", "player C''s coin: p_up > p_down and p_right > p_left for -pi <= gamma <= -pi/2",
        (solo("C' solo, gamma in [-pi, -pi/2]", C, (("gamma", interval(-PI, -PI / 2, n)),), dominates(1, 1)),),
    ))

    claims.append(Claim(
        "C6", "player D''s coin (alpha = gamma) produces no asymmetry on either axis",
        (solo("D' solo, both axes tied", D, (("gamma", wide),), both_ties, s=steps_t1),),
        analytic=lambda c: _first_step_check(
            [CoinParams(g, b, g) for g in wide for b in interval(0, PI / 2, c.n_beta, False, False)], c.tol),
    ))

    # C7: equal parameters, alternating coins, winner read at equal coin use
    shared_axes = (("alpha", interval(-PI, PI, n)), ("gamma", interval(-PI, PI, n)), beta)
    c7 = []
    for group in ((A, B), (A, C), (B, C), (A, B, C)):
        names = "".join(p.label for p in group)
        orders = ((group[0], group[1]), (group[1], group[0])) if len(group) == 2 else _rotations(group)
        c7.append(Clause(f"{names} alternate with shared angles; every starting order gives the same joint verdict",
                         Kind.ALTERNATING, orders, shared_axes, shared_params(group),
                         same_joint_verdict(*group), _multiple_of(len(group), steps), level_two=True))
    claims.append(Claim(
        "C7", "equal-parameter alternation makes the cooperating players joint winners", tuple(c7),
    ))

    ab, abc = ((A, B),), ((A, B, C),)
    pp2, pp3 = per_player_params((A, B)), per_player_params((A, B, C))
    s2, s3 = _multiple_of(2, steps), _multiple_of(3, steps)
    claims.append(Claim(
        "C8", "epsilon strategies under alternation decide solo and joint wins",
        (
            Clause("A gamma = eps, B' alpha > eps: A solo", Kind.ALTERNATING, ab,
                   (("alpha_B", above_eps), beta), pp2, solo_winner(A), s2, fixed=(("gamma_A", eps),)),
            Clause("A gamma = eps, B' alpha = eps: A and B' joint", Kind.ALTERNATING, ab,
                   (beta,), pp2, joint_winners(A, B), s2, fixed=(("gamma_A", eps), ("alpha_B", eps))),
            Clause("A gamma = C' gamma = eps, B' alpha > eps: A solo", Kind.ALTERNATING, abc,
                   (("alpha_B", above_eps), beta), pp3, solo_winner(A), s3,
                   fixed=(("gamma_A", eps), ("gamma_C", eps))),
            Clause("B' alpha = C' gamma = eps, A gamma > eps: B' solo", Kind.ALTERNATING, abc,
                   (("gamma_A", above_eps), beta), pp3, solo_winner(B), s3,
                   fixed=(("alpha_B", eps), ("gamma_C", eps))),
            Clause("A gamma = B' alpha = eps, C' gamma > eps: C' solo", Kind.ALTERNATING, abc,
                   (("gamma_C", above_eps), beta), pp3, solo_winner(C), s3,
                   fixed=(("gamma_A", eps), ("alpha_B", eps))),
            Clause("all three at eps: A, B', C' joint", Kind.ALTERNATING, abc,
                   (beta,), pp3, joint_winners(A, B, C), s3,
                   fixed=(("gamma_A", eps), ("alpha_B", eps), ("gamma_C", eps))),
        ),
    ))

    gamma_a = interval(-2 * PI, -PI, n, left=False)
    wide_no_pi = tuple(v for v in wide if not math.isclose(v, -PI))
    claims.append(Claim(
        "C9", "two-player combined coins (A, B') decide solo and joint wins",
        (
            Clause("A gamma in (-2pi, -pi], B' alpha < gamma: A solo", Kind.COMBINED, ab,
                   (("gamma_A", gamma_a), ("alpha_B", wide), beta), pp2, solo_winner(A), steps,
                   where=lambda q: q["alpha_B"] < q["gamma_A"]),
            Clause("A gamma in (-2pi, -pi], B' alpha > gamma: B' solo", Kind.COMBINED, ab,
                   (("gamma_A", gamma_a), ("alpha_B", wide), beta), pp2, solo_winner(B), steps,
                   where=lambda q: q["alpha_B"] > q["gamma_A"]),
            Clause("A starts with gamma = -pi, B' alpha != gamma: A and B' joint", Kind.COMBINED, ab,
                   (("alpha_B", wide_no_pi), beta), pp2, joint_winners(A, B), steps,
                   fixed=(("gamma_A", -PI),)),
            Clause("B' starts with alpha = -pi, A gamma in (-2pi, -pi): A and B' joint", Kind.COMBINED,
                   ((B, A),), (("gamma_A", interval(-2 * PI, -PI, n, False, False)), beta), pp2,
                   joint_winners(A, B), steps, fixed=(("alpha_B", -PI),)),
        ),
    ))

    gamma_c_open = interval(-PI, -PI / 2, n, False, False)
    claims.append(Claim(
        "C10", "three-player combined coins (A, B', C') decide solo and joint wins",
        (
            Clause("A gamma in (-2pi, -pi], B' alpha > gamma, C' gamma in (-pi, -pi/2): A over B', C'",
                   Kind.COMBINED, abc, (("gamma_A", gamma_a), ("alpha_B", wide), ("gamma_C", gamma_c_open), beta),
                   pp3, beats(A, B, C), steps, where=lambda q: q["alpha_B"] > q["gamma_A"]),
            Clause("B' alpha in (pi, 2pi], A gamma > alpha, C' gamma in (-pi, -pi/2): B' over A, C'",
                   Kind.COMBINED, abc,
                   (("alpha_B", interval(PI, 2 * PI, n, left=False)), ("gamma_A", wide),
                    ("gamma_C", gamma_c_open), beta),
                   pp3, beats(B, A, C), steps, where=lambda q: q["gamma_A"] > q["alpha_B"]),
            Clause("C' gamma in [-pi, -pi/2), A gamma in (-2pi, -pi), B' alpha > A gamma: C' over A, B'",
                   Kind.COMBINED, abc,
                   (("gamma_C", interval(-PI, -PI / 2, n, right=False)),
                    ("gamma_A", interval(-2 * PI, -PI, n, False, False)), ("alpha_B", wide), beta),
                   pp3, beats(C, A, B), steps, where=lambda q: q["alpha_B"] > q["gamma_A"]),
            Clause("A starts with gamma = -pi, B' alpha != gamma, C' gamma in (-pi, -pi/2): joint A, B', C'",
                   Kind.COMBINED, abc, (("alpha_B", wide_no_pi), ("gamma_C", gamma_c_open), beta),
                   pp3, joint_winners(A, B, C), steps, fixed=(("gamma_A", -PI),)),
            Clause("B' starts with alpha = -pi, A gamma != alpha, C' gamma in (-pi, -pi/2): joint A, B', C'",
                   Kind.COMBINED, ((B, C, A),), (("gamma_A", wide_no_pi), ("gamma_C", gamma_c_open), beta),
                   pp3, joint_winners(A, B, C), steps, fixed=(("alpha_B", -PI),)),
            Clause("C' starts with gamma = -pi, A gamma != -pi, B' alpha in (pi, 2pi): joint A, B', C'",
                   Kind.COMBINED, ((C, A, B),),
                   (("gamma_A", wide_no_pi), ("alpha_B", interval(PI, 2 * PI, n, False, False)), beta),
                   pp3, joint_winners(A, B, C), steps, fixed=(("gamma_C", -PI),)),
        ),
    ))
    return claims


def _select(claims: Sequence[Claim], ids: Iterable[str] | None) -> list[Claim]:
    if ids is None:
        return list(claims)
    ids = list(ids)
    if not ids:
        raise AuditError("no claims selected")
    if "all" in ids:
        return list(claims)
    by_id = {c.id: c for c in claims}
    unknown = [i for i in ids if i not in by_id]
    if unknown:
        raise AuditError(f"unknown claim id(s): {', '.join(unknown)}")
    return [by_id[i] for i in sorted(set(ids), key=lambda i: int(i[1:]))]


def _display_params(clause: Clause, point: dict) -> dict:
    if clause.kind is Kind.SOLO:
        player = clause.orders[0][0]
        return clause.make_params(point)[player].as_dict()
    return dict(point)


def audit(claims: Iterable[str] | None = None, cfg: GridConfig | None = None,
          budget_seconds: float | None = None, keep_points: bool = True) -> list[ClaimReport]:
    """Evaluate the selected claims on their grids.

    `claims` holds ids (or ``"all"``); None means every claim.  If
    `budget_seconds` runs out, the report in progress and all later ones are
    flagged incomplete.
    """
    cfg = cfg or GridConfig()
    selected = _select(registry(cfg), claims)
    start = time.perf_counter()
    reports = []
    out_of_time = False
    for claim in selected:
        t0 = time.perf_counter()
        rep = ClaimReport(claim.id, claim.description)
        for ci, clause in enumerate(claim.clauses):
            pts = clause.points()
            summary = {"clause": ci, "label": clause.label,
                       "orders": [[p.value for p in o] for o in clause.orders],
                       "steps": list(clause.steps), "grid_points": len(pts),
                       "holds": 0, "fails": 0}
            for point in pts:
                if budget_seconds is not None and time.perf_counter() - start > budget_seconds:
                    out_of_time = True
                    break
                results = clause.run(point, clause.steps, cfg.tol, cfg.mode)
                for t in clause.steps:
                    verdicts = results[t]
                    holds = bool(clause.predicate(verdicts))
                    rec = PointRecord(claim.id, ci, _display_params(clause, point), t, holds,
                                      verdicts, clause.orders, clause.companion)
                    summary["holds" if holds else "fails"] += 1
                    if keep_points:
                        rep.points.append(rec)
                    if clause.companion:
                        continue
                    if holds:
                        rep.holds_count += 1
                    else:
                        rep.fails_count += 1
                        if len(rep.counterexamples) < MAX_COUNTEREXAMPLES:
                            rep.counterexamples.append({"clause": ci, "params": dict(point),
                                                        "t": t, "runs": rec.runs()})
            if clause.companion:
                rep.companions.append(summary)
            else:
                rep.clauses.append(summary)
                rep.grid_points += len(pts)
                rep.evaluations += len(pts) * len(clause.steps)
            if out_of_time:
                break
        if claim.analytic is not None and not out_of_time:
            rep.analytic = claim.analytic(cfg)
        rep.incomplete = out_of_time
        rep.wall_time = time.perf_counter() - t0
        reports.append(rep)
    return reports


def replay(claim_id: str, clause: int, params: dict, t: int, cfg: GridConfig | None = None) -> list[Marginals]:
    """Re-run one counterexample; returns the marginals of each ordering."""
    cfg = cfg or GridConfig()
    (claim,) = _select(registry(cfg), [claim_id])
    cl = claim.clauses[clause]
    return [decide_winners(marginals_at(cl.spec(params, order, t), [t])[t], cfg.tol, cfg.mode).marginals
            for order in cl.orders]
