"""Batch checks behind ``colourdepth verify``.

Each runner returns a :class:`VerifyReport`; a report with no violations
means the checked statement held on every case tried.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import formats
from .geometry import depth_floor, generate_configuration, induced_octahedral_system
from .gf2 import (
    DEFAULT_SAMPLES,
    DEFAULT_SPAN_BUDGET,
    EdgeSpaceVector,
    build_umbrella_basis,
    enumerate_minimums,
    in_span,
)
from .octahedral import cardinality_lower_bound, coverage, find_odd_box, is_octahedral, verify_bound
from .rng import DEFAULT_SEED, stream


@dataclass
class VerifyReport:
    mode: str
    params: dict
    cases: int = 0
    violations: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_doc(self) -> dict:
        return {
            "mode": self.mode,
            "params": self.params,
            "cases": self.cases,
            "violations": self.violations,
            "stats": self.stats,
            "ok": self.ok,
        }


def verify_bound_mode(
    n: int,
    budget: int = DEFAULT_SPAN_BUDGET,
    samples: int | None = None,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> VerifyReport:
    """Walk (or sample) every octahedral system over n classes of size n and test |Omega| >= k(n-2)+2."""
    report = VerifyReport("bound", {"n": n, "budget": budget, "samples": samples, "seed": seed})
    minimums = enumerate_minimums(n, budget=budget, samples=samples, seed=seed, workers=workers)
    report.cases = minimums.visited
    for system in minimums.violations:
        k = len(coverage(system).covered)
        report.violations.append(
            {"kind": "bound", "k": k, "size": len(system), "bound": cardinality_lower_bound(n, k),
             "witness": formats.system_to_doc(system)}
        )
    for e in minimums.per_k.values():
        if not (is_octahedral(e.witness.class_sizes, e.witness.edges) and verify_bound(e.witness)):
            report.violations.append({"kind": "witness", "k": e.k, "witness": formats.system_to_doc(e.witness)})
    report.stats = formats.minimum_report_to_doc(minimums)
    return report


def verify_span_equivalence(n: int, cases: int = 2000, seed: int = DEFAULT_SEED) -> VerifyReport:
    """Compare span membership with the parity check.

    Exhaustive over all 2**(n**n) subsets when that is at most ``cases``;
    otherwise half the cases are random span members and half are members
    with one edge flipped.
    """
    sizes = (n,) * n
    report = VerifyReport("span-equiv", {"n": n, "cases": cases, "seed": seed})
    basis = build_umbrella_basis(sizes)
    length = math.prod(sizes)
    positives = negatives = 0

    def check(bits: int) -> None:
        nonlocal positives, negatives
        v = EdgeSpaceVector(sizes, bits)
        edges = v.edges()
        a = in_span(v, basis)
        b = is_octahedral(sizes, edges)
        positives += b
        negatives += not b
        if a != b:
            report.violations.append(
                {"kind": "disagreement", "in_span": a, "is_octahedral": b,
                 "edges": [[c + 1 for c in e] for e in sorted(edges)]}
            )

    if length < 63 and (1 << length) <= cases:
        for bits in range(1 << length):
            check(bits)
        report.cases = 1 << length
        report.stats = {"exhaustive": True, "octahedral": positives, "non_octahedral": negatives}
        return report
    rng = stream(seed, 0x5E)
    rows = basis.reduced_form
    nbytes = (len(rows) + 7) // 8
    for t in range(cases):
        coeffs = int.from_bytes(rng.bytes(nbytes), "little")
        bits = 0
        for j, row in enumerate(rows):
            if coeffs >> j & 1:
                bits ^= row
        if t % 2:
            bits ^= 1 << int(rng.integers(length))
        check(bits)
    report.cases = cases
    report.stats = {"exhaustive": False, "octahedral": positives, "non_octahedral": negatives}
    return report


def _depth_trial(args) -> dict:
    d, seed, trial = args
    config = generate_configuration(d, seed, trial=trial)
    rep = induced_octahedral_system(config)
    system = rep.induced_system
    general = rep.boundary_count == 0 and rep.degenerate_count == 0
    return {
        "trial": trial,
        "depth": rep.depth,
        "general_position": general,
        "odd_box": find_odd_box(system.class_sizes, system.edges),
        "covered": len(coverage(system).covered),
        "config": config,
    }


def verify_depth_floor(d: int, trials: int = 500, seed: int = DEFAULT_SEED, workers: int = 1) -> VerifyReport:
    """Generate configurations and check depth >= d^2+1, the parity condition and full coverage."""
    report = VerifyReport("depth-floor", {"d": d, "trials": trials, "seed": seed})
    floor = depth_floor(d)
    jobs = [(d, seed, t) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_depth_trial, jobs, chunksize=max(1, trials // (4 * workers))))
    else:
        results = [_depth_trial(j) for j in jobs]
    depths = []
    non_general = 0
    for r in results:
        depths.append(r["depth"])
        non_general += not r["general_position"]
        doc = formats.config_to_doc(r["config"])
        if r["depth"] < floor:
            report.violations.append({"kind": "depth", "trial": r["trial"], "depth": r["depth"], "config": doc})
        if r["odd_box"] is not None:
            report.violations.append(
                {"kind": "parity", "trial": r["trial"], "box": [[a + 1, b + 1] for a, b in r["odd_box"]],
                 "config": doc}
            )
        if r["general_position"] and r["covered"] != d + 1:
            report.violations.append({"kind": "coverage", "trial": r["trial"], "covered": r["covered"], "config": doc})
    report.cases = trials
    report.stats = {
        "floor": floor,
        "min_depth": min(depths) if depths else None,
        "max_depth": max(depths) if depths else None,
        "non_general_position": non_general,
    }
    return report


__all__ = ["VerifyReport", "verify_bound_mode", "verify_span_equivalence", "verify_depth_floor", "DEFAULT_SAMPLES"]
