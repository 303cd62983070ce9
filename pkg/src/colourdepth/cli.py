"""Command-line interface.

Exit codes: 0 success / nothing violated, 1 a mathematical violation was
found, 2 input error, 3 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any

from . import __version__, formats
from .errors import ColourDepthError, InputError, PreconditionError, ResourceError
from .geometry import depth_floor, induced_octahedral_system, minimize_depth_search
from .gf2 import DEFAULT_SPAN_BUDGET, enumerate_minimums
from .octahedral import (
    colour_condition_holds,
    coverage,
    decomposition_checks,
    find_odd_box,
    recompose,
    suitable_decomposition,
    umbrella_decomposition,
)
from .rng import DEFAULT_SEED
from .verify import verify_bound_mode, verify_depth_floor, verify_span_equivalence

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


class _Run:
    """Collects output for one command and writes the run manifest."""

    def __init__(self, args: argparse.Namespace, inputs: list[bytes]):
        self.args = args
        self.start = time.perf_counter()
        digest = hashlib.sha256()
        for blob in inputs:
            digest.update(hashlib.sha256(blob).digest())
        self.digest = digest.hexdigest()
        self.lines: list[str] = []
        self.doc: dict[str, Any] = {}

    def say(self, line: str) -> None:
        self.lines.append(line)

    def finish(self, code: int, outcome: str) -> int:
        manifest = {
            "command": self.args.command,
            "input_digest": self.digest,
            "seed": getattr(self.args, "seed", None),
            "version": __version__,
            "elapsed_seconds": round(time.perf_counter() - self.start, 6),
            "outcome": {"exit_code": code, "summary": outcome},
        }
        if self.args.json:
            self.doc["manifest"] = manifest
            sys.stdout.write(formats.dumps(self.doc))
        else:
            for line in self.lines:
                print(line)
            print("manifest: " + json.dumps(manifest, sort_keys=True), file=sys.stderr)
        return code


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None


def _args_blob(args: argparse.Namespace, keys: list[str]) -> bytes:
    return json.dumps({k: getattr(args, k, None) for k in keys}, sort_keys=True).encode()


def cmd_depth(args: argparse.Namespace) -> int:
    run = _Run(args, [_read_bytes(args.config)])
    config = formats.read_config(args.config)
    if any(s < 2 for s in config.colour_sizes):
        raise InputError(f"{args.config}: every colour needs at least two points")
    report = induced_octahedral_system(config)
    system = report.induced_system
    run.say(f"d: {config.d}")
    run.say(f"colour sizes: {list(config.colour_sizes)}")
    run.say(f"depth: {report.depth}")
    run.say(f"boundary: {report.boundary_count}")
    run.say(f"degenerate: {report.degenerate_count}")
    run.say(f"floor d^2+1: {depth_floor(config.d)}")
    run.doc = {
        "d": config.d,
        "depth": report.depth,
        "boundary_count": report.boundary_count,
        "degenerate_count": report.degenerate_count,
        "floor": depth_floor(config.d),
        "covered": sorted(c + 1 for c in coverage(system).covered),
    }
    if args.emit_system:
        Path(args.emit_system).write_text(formats.dumps(formats.system_to_doc(system)), encoding="utf-8")
        run.say(f"system written to {args.emit_system}")
    return run.finish(EXIT_OK, f"depth {report.depth}")


def cmd_check(args: argparse.Namespace) -> int:
    run = _Run(args, [_read_bytes(args.system)])
    system = formats.read_system(args.system)
    box = find_odd_box(system.class_sizes, system.edges)
    cov = coverage(system)
    run.doc = {
        "octahedral": box is None,
        "edges": len(system),
        "covered": sorted(c + 1 for c in cov.covered),
    }
    run.say(f"edges: {len(system)}")
    run.say(f"covered classes: {sorted(c + 1 for c in cov.covered)}")
    if box is None:
        run.say("parity condition: holds")
        return run.finish(EXIT_OK, "octahedral")
    one_based = [[a + 1, b + 1] for a, b in box]
    hits = sum(1 for e in system.edges if all(e[i] in pair for i, pair in enumerate(box)))
    run.doc["odd_box"] = one_based
    run.doc["odd_box_edges"] = hits
    run.say(f"parity condition: fails on box {one_based} ({hits} edges)")
    return run.finish(EXIT_VIOLATION, "not octahedral")


def cmd_decompose(args: argparse.Namespace) -> int:
    run = _Run(args, [_read_bytes(args.system)])
    system = formats.read_system(args.system)
    if not system.is_square:
        raise InputError(f"decompositions need |V_i| = n; got class sizes {list(system.class_sizes)}")
    box = find_odd_box(system.class_sizes, system.edges)
    if box is not None:
        run.doc = {"octahedral": False, "odd_box": [[a + 1, b + 1] for a, b in box]}
        run.say(f"input is not octahedral: odd box {run.doc['odd_box']}")
        return run.finish(EXIT_VIOLATION, "not octahedral")
    if args.mode == "suitable":
        dec = suitable_decomposition(system)
        checks = decomposition_checks(system, dec)
        decomposition = formats.suitable_to_doc(dec)
        ok = all(checks.values())
        run.say(f"first covered class: {dec.i1 + 1}")
        run.say(f"vertex order: {[x + 1 for x in dec.vertex_order]}")
        run.say(f"umbrellas: {len(dec.umbrellas)}")
        run.say(f"part sizes: {[len(p) for p in dec.parts]}")
    else:
        umbrellas = umbrella_decomposition(system)
        checks = {
            "recomposes": recompose(umbrellas, system.class_sizes).edges == system.edges,
            "colour_condition": colour_condition_holds(umbrellas, system),
        }
        decomposition = formats.umbrellas_to_doc(umbrellas)
        ok = all(checks.values())
        run.say(f"umbrellas: {len(umbrellas)}")
        for u in decomposition:
            run.say(f"  colour {u['colour']} transversal {u['transversal']}")
    for name, value in checks.items():
        run.say(f"check {name}: {'ok' if value else 'FAILED'}")
    run.doc = {"mode": args.mode, "decomposition": decomposition, "checks": checks}
    if args.output:
        Path(args.output).write_text(formats.dumps(decomposition), encoding="utf-8")
    if not ok:
        return run.finish(EXIT_VIOLATION, "self-check failed")
    return run.finish(EXIT_OK, f"{args.mode} decomposition verified")


def cmd_verify(args: argparse.Namespace) -> int:
    keys = ["mode", "n", "d", "trials", "cases", "budget", "samples", "seed"]
    run = _Run(args, [_args_blob(args, keys)])
    try:
        if args.mode == "bound":
            report = verify_bound_mode(_need(args, "n"), args.budget, args.samples, args.seed, args.threads)
        elif args.mode == "span-equiv":
            report = verify_span_equivalence(_need(args, "n"), args.cases, args.seed)
        else:
            report = verify_depth_floor(_need(args, "d"), args.trials, args.seed, args.threads)
    except ResourceError as exc:
        run.doc = {"mode": args.mode, "error": str(exc), "partial": True}
        run.say(f"resource limit: {exc}")
        return run.finish(EXIT_RESOURCE, "resource limit")
    run.doc = report.to_doc()
    run.say(f"mode: {report.mode}")
    run.say(f"cases: {report.cases}")
    for key, value in report.stats.items():
        if key != "minimums":
            run.say(f"{key}: {value}")
    for m in report.stats.get("minimums", []):
        run.say(f"k={m['k']}: min {m['min']} ({'exhaustive' if m['exhaustive'] else 'sampled'})")
    run.say(f"violations: {len(report.violations)}")
    for v in report.violations:
        run.say("  " + json.dumps(v, sort_keys=True))
    if report.ok:
        return run.finish(EXIT_OK, "no violation")
    return run.finish(EXIT_VIOLATION, f"{len(report.violations)} violations")


def cmd_search_min(args: argparse.Namespace) -> int:
    keys = ["n", "d", "budget", "samples", "iterations", "seed"]
    run = _Run(args, [_args_blob(args, keys)])
    if (args.n is None) == (args.d is None):
        raise InputError("give exactly one of --n (octahedral systems) or --d (point configurations)")
    if args.n is not None:
        try:
            report = enumerate_minimums(args.n, args.budget, args.samples, args.seed, args.threads)
        except ResourceError as exc:
            run.doc = {"error": str(exc), "partial": True}
            run.say(f"resource limit: {exc}")
            return run.finish(EXIT_RESOURCE, "resource limit")
        run.doc = formats.minimum_report_to_doc(report)
        run.say(f"n: {report.n}")
        run.say(f"rank: {report.rank}")
        run.say(f"visited: {report.visited} ({'exhaustive' if report.exhaustive else 'sampled'})")
        for e in report.per_k.values():
            run.say(f"k={e.k}: min {e.minimum}")
        if not report.respects_bound():
            return run.finish(EXIT_VIOLATION, "bound violated")
        return run.finish(EXIT_OK, "minimums recorded")
    config, depth = minimize_depth_search(args.d, args.iterations, args.seed)
    run.doc = {"d": args.d, "depth": depth, "floor": depth_floor(args.d), "config": formats.config_to_doc(config)}
    run.say(f"d: {args.d}")
    run.say(f"best depth: {depth}")
    run.say(f"floor d^2+1: {depth_floor(args.d)}")
    if args.emit_config:
        Path(args.emit_config).write_text(formats.dumps(formats.config_to_doc(config)), encoding="utf-8")
        run.say(f"configuration written to {args.emit_config}")
    return run.finish(EXIT_OK, f"depth {depth}")


def _need(args: argparse.Namespace, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise InputError(f"--{name} is required for mode {args.mode}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colourdepth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="write a JSON document instead of text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--threads", type=int, default=1, help="worker processes for trial loops")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("depth", parents=[common], help="colourful depth of a configuration file")
    p.add_argument("config")
    p.add_argument("--emit-system", metavar="PATH", help="write the induced octahedral system here")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("check", parents=[common], help="test the parity condition on a system file")
    p.add_argument("system")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="suitable or umbrella decomposition")
    p.add_argument("system")
    p.add_argument("--mode", choices=["suitable", "umbrella"], default="umbrella")
    p.add_argument("--output", metavar="PATH", help="also write the decomposition document here")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="run a bound / equivalence / depth-floor check")
    p.add_argument("--mode", choices=["bound", "span-equiv", "depth-floor"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--cases", type=int, default=2000)
    p.add_argument("--budget", type=int, default=DEFAULT_SPAN_BUDGET, help="largest span walked exhaustively")
    p.add_argument("--samples", type=int, help="random span elements when not exhaustive")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search-min", parents=[common], help="smallest systems per k, or a low-depth configuration")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_SPAN_BUDGET)
    p.add_argument("--samples", type=int)
    p.add_argument("--iterations", type=int, default=10_000)
    p.add_argument("--emit-config", metavar="PATH")
    p.set_defaults(func=cmd_search_min)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ColourDepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
