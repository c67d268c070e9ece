"""Command-line interface: spectrum, simulate, retrieve, sweep, corrupt.

Exit codes: 0 success, 2 usage or invalid input, 3 no retrieval, 4 unreadable
or malformed pattern file.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from .dynamics import IntegratorConfig, init_from_gray, integrate, trajectory_table
from .errors import NoRetrieval, ParseError, PhaseMemError
from .files import format_pattern, load_pattern, read_pattern_file, save_pattern
from .network import build_network
from .noise import FlipBits, Mask, UniformNoise, corrupt
from .patterns import BinaryPattern, GrayPattern
from .retrieval import InOrder, Seeded, TournamentConfig, tournament
from .spectral import MARGINAL_TOL, verdict_from_lambda, bisect_sign_change, classify, spectrum

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_RETRIEVAL = 3
EXIT_PARSE = 4
DIGITS = 9


class UsageError(Exception):
    pass


def _g(x: float) -> str:
    return f"{x:.{DIGITS}g}"


def _binary(path: str) -> BinaryPattern:
    pat = load_pattern(path)
    if not isinstance(pat, BinaryPattern):
        raise UsageError(f"{path}: expected a binary (P±1) pattern")
    return pat


def _gray(path: str) -> GrayPattern:
    pat = load_pattern(path)
    return GrayPattern.from_binary(pat) if isinstance(pat, BinaryPattern) else pat


def _parse_range(text: str) -> np.ndarray:
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--eps-range expects a:b:step, got {text!r}") from None
    if step <= 0 or b < a or a < 0:
        raise UsageError("--eps-range needs 0 <= a <= b and step > 0")
    n = int(np.floor((b - a) / step + 1e-9))
    return a + step * np.arange(n + 1)


def cmd_spectrum(args) -> int:
    mems = [_binary(p) for p in args.memories]
    eta = _binary(args.pattern)
    net = build_network(mems, args.epsilon)
    report, source = spectrum(net, eta)
    verdict = classify(net, eta)
    print(f"N = {net.N}, M = {net.M}, epsilon = {_g(net.epsilon)}, source = {source.value}")
    print(report.format(DIGITS))
    print(f"verdict: {verdict.status.value} (lambda_max_nonzero = {_g(verdict.lambda_max_nonzero)})")
    if verdict.note:
        print(f"note: {verdict.note}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    mems = [_binary(p) for p in args.memories]
    net = build_network(mems, args.epsilon)
    cfg = IntegratorConfig(dt=args.dt, t_max=args.tmax, stop_tol=args.tol, trace_stride=args.stride)
    traj = integrate(net, init_from_gray(_gray(args.init)), cfg)
    table = trajectory_table(traj, DIGITS)
    if args.out:
        Path(args.out).write_text(table, encoding="utf-8")
    else:
        sys.stdout.write(table)
    m = " ".join(_g(x) for x in traj.terminal_overlaps)
    print(f"# t = {_g(traj.terminal.time)}, steps = {traj.steps}, converged = {traj.converged}")
    print(f"# terminal overlaps: {m}")
    return EXIT_OK


def _standard_paths(items: Sequence[str]) -> list[str]:
    if len(items) == 1 and os.path.isdir(items[0]):
        d = Path(items[0])
        paths = sorted(str(p) for p in d.iterdir() if p.is_file() and not p.name.startswith("."))
        if not paths:
            raise UsageError(f"{d}: no pattern files")
        return paths
    return list(items)


def cmd_retrieve(args) -> int:
    paths = _standard_paths(args.standards)
    standards = [_binary(p) for p in paths]
    defective = _gray(args.defective)
    pairing = Seeded(args.seed) if args.pairing == "seeded" else InOrder()
    cfg = TournamentConfig(epsilon_fraction=args.epsilon_fraction, pairing=pairing)
    try:
        out = tournament(standards, defective, cfg)
    except NoRetrieval as exc:
        print(f"no retrieval in round {exc.round_index}: {exc}", file=sys.stderr)
        return EXIT_NO_RETRIEVAL
    for rec in out.rounds:
        print(f"round {rec.round}")
        for g, res in zip(rec.subgroups, rec.diagnostics):
            if res is None:
                print(f"  #{g[0]} passes (singleton)")
            else:
                w = g[res.winner - 1]
                ov = " ".join(_g(x) for x in res.overlaps)
                print(f"  #{g[0]} vs #{g[1]} -> #{w}  epsilon = {_g(res.epsilon)}  "
                      f"overlaps = {ov}  steps = {res.steps}")
    print(f"winner: #{out.winner_index} {paths[out.winner_index - 1]}")
    width = read_pattern_file(paths[out.winner_index - 1]).width
    sys.stdout.write(format_pattern(out.winner, width))
    return EXIT_OK


def cmd_sweep(args) -> int:
    mems = [_binary(p) for p in args.memories]
    eta = _binary(args.pattern)
    grid = _parse_range(args.eps_range)
    base = build_network(mems, 0.0)

    def lam(eps: float) -> float:
        return spectrum(base.with_epsilon(eps), eta)[0].lambda_max_nonzero()

    values = [lam(e) for e in grid]
    print("epsilon lambda_max_nonzero verdict")
    for e, v in zip(grid, values):
        print(f"{_g(e)} {_g(v)} {verdict_from_lambda(v, spectrum(base, eta)[1]).status.value}")
    found = False
    for (e0, v0), (e1, v1) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if v0 > MARGINAL_TOL and v1 <= MARGINAL_TOL:
            root = bisect_sign_change(lam, float(e0), float(e1), tol=1e-12)
        elif v0 <= MARGINAL_TOL and v1 > MARGINAL_TOL:
            root = bisect_sign_change(lambda x: -lam(x), float(e0), float(e1), tol=1e-12)
        else:
            continue
        found = True
        print(f"critical epsilon: {_g(root)} (bracket {_g(e0)}..{_g(e1)})")
    if not found:
        print("critical epsilon: none bracketed")
    return EXIT_OK


def cmd_corrupt(args) -> int:
    src = read_pattern_file(args.pattern)
    if not src.is_binary:
        raise UsageError(f"{args.pattern}: expected a binary (P±1) pattern")
    chosen = [x is not None for x in (args.flip, args.noise, args.mask)]
    if sum(chosen) != 1:
        raise UsageError("choose exactly one of --flip, --noise, --mask")
    if args.flip is not None:
        mode = FlipBits(args.flip, args.seed)
    elif args.noise is not None:
        mode = UniformNoise(args.noise, args.seed)
    else:
        try:
            r1, r2 = (int(x) for x in args.mask.split(":"))
        except ValueError:
            raise UsageError(f"--mask expects r1:r2, got {args.mask!r}") from None
        mode = Mask(r1, r2, src.width)
    gray = corrupt(src.pattern, mode)
    if args.out:
        save_pattern(args.out, gray, src.width, src.height)
    else:
        sys.stdout.write(format_pattern(gray, src.width, src.height))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phasemem", description="Oscillator associative memory toolkit.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", help="Jacobian spectrum and stability verdict at a binary pattern")
    s.add_argument("--memories", nargs="+", required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--epsilon", type=float, required=True)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("simulate", help="integrate the phase dynamics from a (gray) pattern")
    s.add_argument("--memories", nargs="+", required=True)
    s.add_argument("--init", required=True)
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--dt", type=float, default=IntegratorConfig.dt)
    s.add_argument("--tmax", type=float, default=IntegratorConfig.t_max)
    s.add_argument("--tol", type=float, default=IntegratorConfig.stop_tol)
    s.add_argument("--stride", type=int, default=IntegratorConfig.trace_stride)
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("retrieve", help="tournament retrieval of a defective pattern")
    s.add_argument("--standards", nargs="+", required=True, help="pattern files or one directory")
    s.add_argument("--defective", required=True)
    s.add_argument("--pairing", choices=["inorder", "seeded"], default="inorder")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon-fraction", type=float, default=TournamentConfig.epsilon_fraction)
    s.set_defaults(func=cmd_retrieve)

    s = sub.add_parser("sweep", help="lambda_max_nonzero over an epsilon grid")
    s.add_argument("--memories", nargs="+", required=True)
    s.add_argument("--pattern", required=True)
    s.add_argument("--eps-range", required=True, help="a:b:step, inclusive")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("corrupt", help="write a seeded corrupted copy of a binary pattern")
    s.add_argument("--pattern", required=True)
    s.add_argument("--flip", type=int)
    s.add_argument("--noise", type=float)
    s.add_argument("--mask", help="r1:r2, 1-based inclusive rows")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_corrupt)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoRetrieval as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_RETRIEVAL
    except (UsageError, PhaseMemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
