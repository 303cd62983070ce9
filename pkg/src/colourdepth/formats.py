"""JSON documents read and written by the CLI.

Octahedral systems: ``{"n", "class_sizes", "edges"}`` with 1-based vertex
indices and edges sorted lexicographically.  Configurations: ``{"d",
"colours"}`` with coordinates as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from .errors import InputError
from .geometry import ColourfulConfiguration, format_rational, parse_rational
from .gf2 import MinimumReport
from .octahedral import OctahedralSystem, SuitableDecomposition, Umbrella


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


# ---------------------------------------------------------------------------
# Octahedral systems


def system_to_doc(system: OctahedralSystem) -> dict:
    return {
        "n": system.n,
        "class_sizes": list(system.class_sizes),
        "edges": [[c + 1 for c in e] for e in system.sorted_edges()],
    }


def system_from_doc(doc: Any, where: str = "system") -> OctahedralSystem:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    for key in ("n", "class_sizes", "edges"):
        if key not in doc:
            raise InputError(f"{where}: missing field {key!r}")
    n, sizes, edges = doc["n"], doc["class_sizes"], doc["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError(f"{where}.n: expected an integer")
    if not isinstance(sizes, list) or len(sizes) != n or not all(isinstance(s, int) for s in sizes):
        raise InputError(f"{where}.class_sizes: expected {n} integers")
    if not isinstance(edges, list):
        raise InputError(f"{where}.edges: expected an array")
    parsed = []
    for j, e in enumerate(edges):
        if not isinstance(e, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in e):
            raise InputError(f"{where}.edges[{j}]: expected an array of integers")
        parsed.append(tuple(c - 1 for c in e))
    try:
        return OctahedralSystem(tuple(sizes), frozenset(parsed))
    except InputError as exc:
        raise InputError(f"{where}: {exc} (indices are 1-based in files)") from None


def read_system(path: str | Path) -> OctahedralSystem:
    return system_from_doc(load_json(path), str(path))


def umbrella_to_doc(u: Umbrella) -> dict:
    return {"colour": u.colour + 1, "transversal": [t + 1 for t in u.transversal]}


def umbrellas_to_doc(umbrellas: Iterable[Umbrella]) -> list[dict]:
    return [umbrella_to_doc(u) for u in sorted(umbrellas)]


def suitable_to_doc(dec: SuitableDecomposition) -> dict:
    return {
        "i1": dec.i1 + 1,
        "vertex_order": [x + 1 for x in dec.vertex_order],
        "umbrellas": umbrellas_to_doc(dec.umbrellas),
        "W": system_to_doc(dec.W),
        "parts": [system_to_doc(p) for p in dec.parts],
    }


def minimum_report_to_doc(report: MinimumReport) -> dict:
    return {
        "n": report.n,
        "rank": report.rank,
        "visited": report.visited,
        "exhaustive": report.exhaustive,
        "minimums": [
            {"k": e.k, "min": e.minimum, "exhaustive": e.exhaustive, "witness": system_to_doc(e.witness)}
            for e in report.per_k.values()
        ],
    }


# ---------------------------------------------------------------------------
# Configurations


def config_to_doc(config: ColourfulConfiguration) -> dict:
    return {
        "d": config.d,
        "colours": [[[format_rational(x) for x in p] for p in c] for c in config.colours],
    }


def config_from_doc(doc: Any, where: str = "config") -> ColourfulConfiguration:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    d = doc.get("d")
    colours = doc.get("colours")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise InputError(f"{where}.d: expected a positive integer")
    if not isinstance(colours, list) or len(colours) != d + 1:
        raise InputError(f"{where}.colours: expected {d + 1} colours")
    parsed = []
    for i, c in enumerate(colours):
        if not isinstance(c, list) or not c:
            raise InputError(f"{where}.colours[{i}]: expected a nonempty array of points")
        pts = []
        for j, p in enumerate(c):
            loc = f"{where}.colours[{i}][{j}]"
            if not isinstance(p, list) or len(p) != d:
                raise InputError(f"{loc}: expected {d} coordinates")
            coords = []
            for k, x in enumerate(p):
                try:
                    coords.append(parse_rational(x))
                except InputError as exc:
                    raise InputError(f"{loc}[{k}]: {exc}") from None
            pts.append(tuple(coords))
        parsed.append(tuple(pts))
    return ColourfulConfiguration(d, tuple(parsed))


def read_config(path: str | Path) -> ColourfulConfiguration:
    return config_from_doc(load_json(path), str(path))
