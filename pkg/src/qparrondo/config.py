"""Scenario files.

A scenario is a TOML (or JSON) document.  Top-level keys describe the game,
``[player.<name>]`` tables give each player's free angles, and an optional
``[shared]`` table gives one triple used by every player (level-two
cooperation)::

    kind = "combined"          # solo | alternating | combined
    players = ["A", "Bprime"]  # application order, first acts first
    steps = 20
    tol = 1e-9                 # optional, tie tolerance
    mode = "sign"              # optional, sign | strict
    epsilon_min = 0.001        # optional, value substituted for "eps"

    [player.A]
    gamma = "-pi"
    beta = "pi/4"

    [player.Bprime]
    alpha = -4.0
    beta = "pi/4"

    [output]                   # optional file names inside --out
    verdict = "verdict.json"
    distribution = "distribution.csv"

Angles are numbers or strings such as ``"pi/4"``, ``"-3pi/2"``, ``"2*pi"``
or ``"eps"``.  Missing angles default to 0.
"""

from __future__ import annotations

import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .coins import CoinParams, Player
from .rules import DEFAULT_TOL, Mode
from .strategies import EPSILON_MIN, Kind, StrategySpec

__all__ = ["ConfigError", "ScenarioConfig", "parse_angle", "load_scenario", "scenario_from_mapping"]

_PI_FORM = re.compile(r"^([+-]?)(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?$")


class ConfigError(ValueError):
    """Scenario file is unreadable or does not describe a valid game."""


def parse_angle(value, epsilon: float = EPSILON_MIN) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"angle {value!r} is not a number")
    if isinstance(value, (int, float)):
        return float(value)
    text = str(value).strip().lower().replace(" ", "")
    if text in ("eps", "epsilon"):
        return float(epsilon)
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_FORM.match(text)
    if not m:
        raise ConfigError(f"cannot read angle {value!r}")
    sign, coef, denom = m.groups()
    out = (float(coef) if coef else 1.0) * math.pi / (float(denom) if denom else 1.0)
    return -out if sign == "-" else out


@dataclass(frozen=True)
class ScenarioConfig:
    spec: StrategySpec
    tol: float = DEFAULT_TOL
    mode: Mode = Mode.SIGN
    epsilon_min: float = EPSILON_MIN
    outputs: dict = field(default_factory=lambda: {"verdict": "verdict.json",
                                                   "distribution": "distribution.csv",
                                                   "schedule": "schedule.txt",
                                                   "sweep": "sweep.jsonl"})

    def with_params(self, params: tuple[CoinParams, ...]) -> ScenarioConfig:
        spec = StrategySpec(self.spec.kind, self.spec.players, params, self.spec.steps,
                            level_two=self.spec.level_two and len(set(params)) <= 1)
        return ScenarioConfig(spec, self.tol, self.mode, self.epsilon_min, self.outputs)


def _triple(table: dict, eps: float, where: str) -> CoinParams:
    unknown = set(table) - {"alpha", "beta", "gamma"}
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {sorted(unknown)}")
    return CoinParams(*(parse_angle(table.get(k, 0.0), eps) for k in ("alpha", "beta", "gamma")))


def scenario_from_mapping(doc: dict) -> ScenarioConfig:
    known = {"kind", "players", "steps", "tol", "mode", "epsilon_min", "player", "shared", "output", "level_two"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown top-level key(s) {sorted(unknown)}")
    try:
        eps = float(doc.get("epsilon_min", EPSILON_MIN))
        if not eps > 0:
            raise ConfigError("epsilon_min must be positive")
        kind = Kind.parse(doc.get("kind", "solo"))
        names = doc.get("players")
        if isinstance(names, str):
            names = [names]
        if not names:
            raise ConfigError("players must list at least one player")
        players = tuple(Player.parse(n) for n in names)
        if "steps" not in doc:
            raise ConfigError("steps is required")
        steps = doc["steps"]
        if isinstance(steps, bool) or not isinstance(steps, int):
            raise ConfigError("steps must be an integer")
        tables = {Player.parse(k): v for k, v in (doc.get("player") or {}).items()}
        shared = doc.get("shared")
        if shared is not None and tables:
            raise ConfigError("give either [shared] or [player.*] tables, not both")
        if shared is not None:
            triple = _triple(shared, eps, "shared")
            params = (triple,) * len(players)
            level_two = True
        else:
            params = tuple(_triple(tables.get(p, {}), eps, f"player.{p.value}") for p in players)
            level_two = bool(doc.get("level_two", False))
        spec = StrategySpec(kind, players, params, steps, level_two=level_two)
        tol = float(doc.get("tol", DEFAULT_TOL))
        if tol < 0:
            raise ConfigError("tol must be nonnegative")
        mode = Mode.parse(doc.get("mode", "sign"))
    except ConfigError:
        raise
    except (ValueError, TypeError, AttributeError) as exc:
        raise ConfigError(str(exc)) from exc
    cfg = ScenarioConfig(spec, tol, mode, eps)
    outputs = dict(cfg.outputs)
    outputs.update({k: str(v) for k, v in (doc.get("output") or {}).items()})
    return ScenarioConfig(spec, tol, mode, eps, outputs)


def load_scenario(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        if path.suffix.lower() == ".json":
            doc = json.loads(raw.decode("utf-8"))
        else:
            doc = tomllib.loads(raw.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a table")
    return scenario_from_mapping(doc)
