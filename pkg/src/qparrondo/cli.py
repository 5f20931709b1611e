"""Command line entry point: run | sweep | audit | oracle-check | classical.

Exit codes: 0 success, 1 check failed (oracle-check only), 2 invalid
input, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .audit import AuditError, GridConfig, audit
from .classical import LITERATURE_PRESET, ClassicalParams, Periodic, RandomMix, paradox_demo
from .coins import Player
from .config import ConfigError, ScenarioConfig, load_scenario, parse_angle
from .oracle import check_engine_against_oracle, uniform_grid
from .rules import Mode, decide_winners
from .serialize import dumps
from .strategies import build_schedule
from .walk import evolve, initial_state, marginals, position_distribution

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2, 3
ORACLE_THRESHOLD = 1e-10


class UsageError(Exception):
    pass


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _scenario(args) -> ScenarioConfig:
    cfg = load_scenario(args.config)
    if args.tol is not None:
        if args.tol < 0:
            raise ConfigError("--tol must be nonnegative")
        cfg = replace(cfg, tol=args.tol)
    if args.mode is not None:
        cfg = replace(cfg, mode=Mode.parse(args.mode))
    return cfg


def cmd_run(args) -> int:
    cfg = _scenario(args)
    schedule = build_schedule(cfg.spec)
    state = evolve(initial_state(), schedule)
    dist = position_distribution(state)
    verdict = decide_winners(marginals(dist), cfg.tol, cfg.mode)
    out = Path(args.out)
    _write(out / cfg.outputs["verdict"], verdict.to_json() + "\n")
    _write(out / cfg.outputs["distribution"], dist.to_csv())
    _write(out / cfg.outputs["schedule"], "".join(f"{i}\t{d}\n" for i, d in enumerate(schedule.provenance)))
    print(verdict.to_json())
    return EXIT_OK


def parse_axis(text: str, eps: float) -> tuple[str, str, np.ndarray]:
    """``PLAYER.PARAM=LO:HI:COUNT`` (PLAYER may be ``shared``)."""
    try:
        target, rng = text.split("=", 1)
        who, param = target.strip().split(".", 1)
        lo, hi, count = rng.split(":")
        count = int(count)
    except ValueError:
        raise UsageError(f"bad axis {text!r}; expected PLAYER.PARAM=LO:HI:COUNT") from None
    if param not in ("alpha", "beta", "gamma"):
        raise UsageError(f"axis parameter must be alpha, beta or gamma, got {param!r}")
    if count < 1:
        raise UsageError(f"axis {text!r} needs a positive point count")
    who = "shared" if who == "shared" else Player.parse(who).value
    return who, param, np.linspace(parse_angle(lo, eps), parse_angle(hi, eps), count)


def cmd_sweep(args) -> int:
    cfg = _scenario(args)
    if not args.axis:
        raise UsageError("sweep needs at least one --axis")
    axes = [parse_axis(a, cfg.epsilon_min) for a in args.axis]
    for who, _, _ in axes:
        if who != "shared" and Player(who) not in cfg.spec.players:
            raise UsageError(f"axis player {who} does not play in this scenario")
    lines = []
    for values in itertools.product(*(vals for _, _, vals in axes)):
        params = list(cfg.spec.params)
        point = {}
        for (who, param, _), v in zip(axes, values):
            v = float(v)
            point[f"{who}.{param}"] = v
            for i, p in enumerate(cfg.spec.players):
                if who == "shared" or p.value == who:
                    params[i] = replace(params[i], **{param: v})
        run_cfg = cfg.with_params(tuple(params))
        state = evolve(initial_state(), build_schedule(run_cfg.spec))
        verdict = decide_winners(marginals(position_distribution(state)), cfg.tol, cfg.mode)
        record = {"point": point}
        record.update(verdict.to_dict())
        lines.append(dumps(record) + "\n")
    _write(Path(args.out) / cfg.outputs["sweep"], "".join(lines))
    print(f"{len(lines)} grid points written")
    return EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not vals or any(v < 0 for v in vals):
        raise UsageError(f"expected nonnegative integers, got {text!r}")
    return vals


def cmd_audit(args) -> int:
    kwargs = {}
    if args.grid is not None:
        kwargs["n_angle"] = args.grid
    if args.beta_grid is not None:
        kwargs["n_beta"] = args.beta_grid
    if args.wide_grid is not None:
        kwargs["n_wide"] = args.wide_grid
    if args.t is not None:
        kwargs["steps"] = _int_list(args.t)
    if args.tol is not None:
        if args.tol < 0:
            raise UsageError("--tol must be nonnegative")
        kwargs["tol"] = args.tol
    if args.mode is not None:
        kwargs["mode"] = Mode.parse(args.mode)
    try:
        cfg = GridConfig(**kwargs)
    except AuditError as exc:
        raise UsageError(str(exc)) from None
    ids = [c.strip() for c in args.claims.split(",") if c.strip()]
    reports = audit(ids, cfg, budget_seconds=args.budget)
    out = Path(args.out)
    _write(out / "claims_report.jsonl", "".join(r.to_json() + "\n" for r in reports))
    _write(out / "audit_points.jsonl",
           "".join(dumps(p.to_dict()) + "\n" for r in reports for p in r.points))
    for r in reports:
        frac = f"{r.holds_fraction:.3f}" if r.evaluations else "n/a"
        flag = " INCOMPLETE" if r.incomplete else ""
        print(f"{r.claim}: holds {r.holds_count}/{r.evaluations} ({frac}){flag}  [{r.wall_time:.1f}s]",
              file=sys.stderr)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    dev = check_engine_against_oracle(uniform_grid(args.grid))
    print(f"max deviation: {dev:.17g}")
    return EXIT_OK if dev < ORACLE_THRESHOLD else EXIT_CHECK_FAILED


def cmd_classical(args) -> int:
    base = LITERATURE_PRESET
    try:
        params = ClassicalParams(
            base.p if args.p is None else args.p,
            base.p0 if args.p0 is None else args.p0,
            base.p1 if args.p1 is None else args.p1,
        )
        mix = Periodic(args.pattern) if args.pattern else RandomMix(args.mix_prob)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.rounds < 1 or args.trials < 2:
        raise UsageError("need rounds >= 1 and trials >= 2")
    report = paradox_demo(params, mix, args.rounds, args.trials, args.seed)
    report["mix"] = {"pattern": args.pattern} if args.pattern else {"prob_a": args.mix_prob}
    text = dumps(report) + "\n"
    _write(Path(args.out) / "classical.json", text)
    print(text, end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qparrondo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="scenario file (TOML or JSON)")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--tol", type=float, default=None, help="tie tolerance")
        p.add_argument("--mode", choices=["sign", "strict"], default=None)

    p = sub.add_parser("run", help="play one scenario")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="play a scenario over a parameter grid")
    common(p)
    p.add_argument("--axis", action="append", help="PLAYER.PARAM=LO:HI:COUNT, repeatable; first is slowest")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", help="verify the game's claims on parameter grids")
    common(p, config=False)
    p.add_argument("--claims", default="all", help="comma-separated ids (C1..C10) or 'all'")
    p.add_argument("--grid", type=int, default=None, help="points per quoted parameter interval")
    p.add_argument("--beta-grid", type=int, default=None)
    p.add_argument("--wide-grid", type=int, default=None)
    p.add_argument("--t", default=None, help="comma-separated step counts")
    p.add_argument("--budget", type=float, default=None, help="seconds before the audit stops early")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("oracle-check", help="compare one engine step with the closed forms")
    p.add_argument("--grid", type=int, default=11)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("classical", help="classical Parrondo drifts and paradox flag")
    p.add_argument("--out", default=".")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=1000)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--p0", type=float, default=None)
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--pattern", default=None, help="mixing pattern such as ABB (default: random 50/50)")
    p.add_argument("--mix-prob", type=float, default=0.5)
    p.set_defaults(func=cmd_classical)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, UsageError, AuditError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
