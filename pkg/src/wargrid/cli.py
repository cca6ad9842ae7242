"""Command-line entry points.

    wargrid run --scenario duel.scn --seed 7 --ticks 300 --out results/
    wargrid analyze matrix problem.txt
    wargrid analyze tropical problem.txt
    wargrid serve --scenario duel.scn --bind 127.0.0.1:8765

Exit codes: 0 success, 2 parse/config/guard errors, 3 runtime faults.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import dsl
from .polynomial import PolynomialSyntaxError, parse_polynomial
from .strategy import (
    EnumerationGuardError,
    favorable_probability,
    favorable_probability_dp,
)
from .tropical import Box, Convention, SizeError, extremum_over_box, region_sample, tropicalize
from .world import run_match

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RUNTIME = 3


class InputError(Exception):
    """Bad file content or arguments; maps to exit code 2."""


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="wargrid", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="headless scenario run")
    run_p.add_argument("--scenario", required=True, help="path to a .scn file")
    run_p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    run_p.add_argument("--ticks", type=int, default=None, help="override the tick budget")
    run_p.add_argument("--out", default=None, help="directory for events.jsonl and summary.txt")

    analyze_p = sub.add_parser("analyze", help="strategy-matrix and tropical analysis")
    analyze_p.add_argument("kind", choices=["matrix", "tropical"])
    analyze_p.add_argument("input", help="path to the problem file")

    serve_p = sub.add_parser("serve", help="WebSocket match service")
    serve_p.add_argument("--scenario", required=True, help="path to a .scn file")
    serve_p.add_argument("--bind", default="127.0.0.1:8765", help="host:port to listen on")
    serve_p.add_argument("--ui", default=None, help="directory with the built browser client")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        return _cmd_serve(args)
    except (InputError, dsl.ParseError, dsl.ScenarioError, PolynomialSyntaxError,
            EnumerationGuardError, SizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # runtime fault
        print(f"runtime fault: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def _read(path_text: str) -> str:
    path = Path(path_text)
    if not path.exists():
        raise InputError(f"no such file: {path}")
    return path.read_text(encoding="utf-8")


def _load_scenario(args) -> "dsl.SimConfig":
    config = dsl.parse_scenario(_read(args.scenario))
    return dsl.with_overrides(config, seed=args.seed, ticks=args.ticks)


def _cmd_run(args) -> int:
    config = _load_scenario(args)
    world, stats = run_match(config)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "events.jsonl").write_text(
            "\n".join(world.log.lines()) + "\n", encoding="utf-8"
        )
        (out / "summary.txt").write_text(stats.to_text(), encoding="utf-8")
    print(stats.to_text(), end="")
    return EXIT_OK


def _parse_matrix_file(text: str) -> tuple[list[float], int, Fraction, str]:
    row: list[float] | None = None
    levels: int | None = None
    threshold: Fraction | None = None
    sense: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, colon, rest = line.partition(":")
        if not colon:
            raise InputError(f"line {lineno}: expected 'key: value', got {line!r}")
        key = key.strip().upper()
        rest = rest.strip()
        if key == "A":
            try:
                row = [float(tok) for tok in rest.split()]
            except ValueError:
                raise InputError(f"line {lineno}: A needs numbers, got {rest!r}") from None
        elif key == "L":
            try:
                levels = int(rest)
            except ValueError:
                raise InputError(f"line {lineno}: L needs an integer, got {rest!r}") from None
        elif key == "R":
            parts = rest.split()
            if len(parts) != 2 or parts[1] not in (">=", "<="):
                raise InputError(f"line {lineno}: R needs 'value >=|<=', got {rest!r}")
            try:
                threshold = Fraction(parts[0])
            except ValueError:
                raise InputError(f"line {lineno}: bad threshold {parts[0]!r}") from None
            sense = parts[1]
        else:
            raise InputError(f"line {lineno}: unknown key {key!r}")
    if row is None or levels is None or threshold is None or sense is None:
        raise InputError("matrix file needs lines 'A: ...', 'L: ...', and 'R: value sense'")
    return row, levels, threshold, sense


def _cmd_analyze(args) -> int:
    text = _read(args.input)
    if args.kind == "matrix":
        row, levels, threshold, sense = _parse_matrix_file(text)
        try:
            p = favorable_probability(row, threshold, sense, levels)
        except EnumerationGuardError:
            p = favorable_probability_dp(row, threshold, sense, levels)
        print(f"{p.numerator}/{p.denominator} ≈ {float(p):.4f}")
        return EXIT_OK
    return _analyze_tropical(text)


def _analyze_tropical(text: str) -> int:
    poly_src: str | None = None
    axis_names: list[str] | None = None
    bounds: list[float] | None = None
    convention = Convention.MAX_PLUS
    resolution: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, colon, rest = line.partition(":")
        if not colon:
            raise InputError(f"line {lineno}: expected 'key: value', got {line!r}")
        key = key.strip().lower()
        rest = rest.strip()
        if key == "p":
            poly_src = rest
        elif key == "vars":
            axis_names = rest.split()
        elif key == "box":
            try:
                bounds = [float(tok) for tok in rest.split()]
            except ValueError:
                raise InputError(f"line {lineno}: box needs numbers, got {rest!r}") from None
        elif key == "convention":
            if rest not in ("max", "min"):
                raise InputError(f"line {lineno}: convention must be max or min")
            convention = Convention.MAX_PLUS if rest == "max" else Convention.MIN_PLUS
        elif key == "resolution":
            try:
                resolution = int(rest)
            except ValueError:
                raise InputError(f"line {lineno}: resolution needs an integer") from None
        else:
            raise InputError(f"line {lineno}: unknown key {key!r}")
    if poly_src is None or bounds is None:
        raise InputError("tropical file needs 'P: <polynomial>' and 'box: lo hi ...' lines")

    poly = parse_polynomial(poly_src)
    tp = tropicalize(poly, variables=axis_names, convention=convention)
    if len(bounds) != 2 * tp.dim:
        raise InputError(
            f"box needs {2 * tp.dim} numbers (lo hi per axis), got {len(bounds)}"
        )
    box = Box(lows=tuple(bounds[0::2]), highs=tuple(bounds[1::2]))
    value, vertex = extremum_over_box(tp, box)
    word = "max" if convention is Convention.MAX_PLUS else "min"
    vertex_text = ", ".join(f"{v:g}" for v in vertex)
    print(f"{word} {value:g} at vertex ({vertex_text})")
    if resolution is not None:
        labels = region_sample(tp, box, resolution)
        print("region:")
        flat = labels.reshape(-1)
        axes = [
            [lo + (hi - lo) * k / (resolution - 1) for k in range(resolution)]
            for lo, hi in zip(box.lows, box.highs)
        ]
        from itertools import product as iproduct

        for coords, label in zip(iproduct(*axes), flat):
            coord_text = " ".join(f"{c:g}" for c in coords)
            print(f"{coord_text} {label}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    config = dsl.parse_scenario(_read(args.scenario))
    host, _, port_text = args.bind.partition(":")
    if not host or not port_text:
        raise InputError(f"--bind needs host:port, got {args.bind!r}")
    try:
        port = int(port_text)
    except ValueError:
        raise InputError(f"bad port {port_text!r}") from None
    if args.ui is not None and not Path(args.ui).is_dir():
        raise InputError(f"--ui directory not found: {args.ui}")
    app = create_app(config, ui_dir=args.ui)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
