"""GF(2) algebra on the edge space V_1 x ... x V_n.

A subset of the edge space is an int bitset: bit ``i`` stands for the edge
of rank ``i`` in lexicographic order, class 0 most significant.  Umbrella
indicator vectors span exactly the octahedral systems, which gives both an
independent membership test and a way to enumerate every octahedral system
of a given shape.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError, ResourceError
from .octahedral import (
    Edge,
    OctahedralSystem,
    Umbrella,
    _check_sizes,
    all_umbrellas,
    cardinality_lower_bound,
)
from .rng import DEFAULT_SEED, stream

DEFAULT_BIT_BUDGET = 1 << 20
DEFAULT_SPAN_BUDGET = 1 << 24
DEFAULT_SAMPLES = 10**6

# The Gray walk is cut into 2**_CHUNK_BITS independent chunks whatever the
# worker count, so reports do not depend on parallelism.
_CHUNK_BITS = 6
_MAX_VIOLATIONS = 16


def _strides(class_sizes: Sequence[int]) -> list[int]:
    strides = []
    acc = 1
    for s in reversed(class_sizes):
        strides.append(acc)
        acc *= s
    return strides[::-1]


def edge_index(edge: Sequence[int], class_sizes: Sequence[int]) -> int:
    return sum(c * st for c, st in zip(edge, _strides(class_sizes)))


def index_edge(index: int, class_sizes: Sequence[int]) -> Edge:
    out = []
    for s in reversed(class_sizes):
        index, r = divmod(index, s)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True)
class EdgeSpaceVector:
    class_sizes: tuple[int, ...]
    bits: int = 0

    def __post_init__(self):
        sizes = _check_sizes(self.class_sizes)
        object.__setattr__(self, "class_sizes", sizes)
        if self.bits < 0 or self.bits.bit_length() > self.length:
            raise InputError(f"bit-vector does not fit the {self.length}-edge space")

    @property
    def length(self) -> int:
        return math.prod(self.class_sizes)

    @classmethod
    def from_edges(cls, class_sizes: Sequence[int], edges: Iterable[Sequence[int]]) -> EdgeSpaceVector:
        sizes = tuple(class_sizes)
        strides = _strides(sizes)
        bits = 0
        for e in edges:
            bits ^= 1 << sum(c * st for c, st in zip(e, strides))
        return cls(sizes, bits)

    @classmethod
    def from_system(cls, system: OctahedralSystem) -> EdgeSpaceVector:
        return cls.from_edges(system.class_sizes, system.edges)

    def edges(self) -> list[Edge]:
        return [index_edge(i, self.class_sizes) for i in _bit_positions(self.bits)]

    def to_system(self) -> OctahedralSystem:
        return OctahedralSystem(self.class_sizes, frozenset(self.edges()))

    def __xor__(self, other: EdgeSpaceVector) -> EdgeSpaceVector:
        if self.class_sizes != other.class_sizes:
            raise InputError("shape mismatch")
        return EdgeSpaceVector(self.class_sizes, self.bits ^ other.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()


def _bit_positions(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def _reduce(v: int, pivots: dict[int, int]) -> int:
    while v:
        top = v.bit_length() - 1
        row = pivots.get(top)
        if row is None:
            return v
        v ^= row
    return 0


@dataclass(frozen=True)
class UmbrellaBasis:
    """Umbrella generators of the edge space and their echelon form.

    ``pivots`` maps a leading bit to the echelon row that owns it; those
    rows (``reduced_form``, by decreasing pivot) span the same space as the
    generators.
    """

    class_sizes: tuple[int, ...]
    umbrellas: tuple[Umbrella, ...]
    generators: tuple[int, ...]
    pivots: dict[int, int] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def reduced_form(self) -> list[int]:
        return [self.pivots[p] for p in sorted(self.pivots, reverse=True)]


def build_umbrella_basis(class_sizes: Sequence[int], bit_budget: int = DEFAULT_BIT_BUDGET) -> UmbrellaBasis:
    sizes = _check_sizes(class_sizes)
    length = math.prod(sizes)
    if length > bit_budget:
        raise ResourceError(f"edge space has {length} bits, budget is {bit_budget}")
    umbrellas = all_umbrellas(sizes)
    strides = _strides(sizes)
    gens = []
    for u in umbrellas:
        bits = 0
        for e in u.edges(sizes):
            bits |= 1 << sum(c * st for c, st in zip(e, strides))
        gens.append(bits)
    pivots: dict[int, int] = {}
    for g in gens:
        r = _reduce(g, pivots)
        if r:
            pivots[r.bit_length() - 1] = r
    return UmbrellaBasis(sizes, tuple(umbrellas), tuple(gens), pivots)


def octahedral_dimension(class_sizes: Sequence[int]) -> int:
    """prod |V_i| - prod (|V_i| - 1): the dimension of the space cut out by the box constraints."""
    return math.prod(class_sizes) - math.prod(s - 1 for s in class_sizes)


def in_span(v: EdgeSpaceVector, basis: UmbrellaBasis) -> bool:
    if v.class_sizes != basis.class_sizes:
        raise InputError(f"shape mismatch: {v.class_sizes} vs {basis.class_sizes}")
    return _reduce(v.bits, basis.pivots) == 0


def span_elements(basis: UmbrellaBasis) -> Iterable[int]:
    """Every element of the span once, in Gray-code order over the echelon rows."""
    rows = basis.reduced_form[::-1]
    cur = 0
    yield cur
    for i in range(1, 1 << len(rows)):
        cur ^= rows[(i & -i).bit_length() - 1]
        yield cur


# ---------------------------------------------------------------------------
# Minimum search


@dataclass(frozen=True)
class MinimumEntry:
    k: int
    minimum: int
    witness: OctahedralSystem
    exhaustive: bool


@dataclass(frozen=True)
class MinimumReport:
    n: int
    rank: int
    per_k: dict[int, MinimumEntry]
    visited: int
    exhaustive: bool
    violations: tuple[OctahedralSystem, ...] = ()

    def respects_bound(self) -> bool:
        return all(e.minimum >= cardinality_lower_bound(self.n, e.k) for e in self.per_k.values())


def _vertex_masks(class_sizes: tuple[int, ...]) -> list[list[int]]:
    length = math.prod(class_sizes)
    masks = [[0] * s for s in class_sizes]
    for idx in range(length):
        for i, c in enumerate(index_edge(idx, class_sizes)):
            masks[i][c] |= 1 << idx
    return masks


def _covered_count(bits: int, masks: list[list[int]]) -> int:
    k = 0
    for ms in masks:
        for m in ms:
            if not bits & m:
                break
        else:
            k += 1
    return k


@dataclass
class _Partial:
    best: dict[int, tuple[int, int]] = field(default_factory=dict)
    visited: int = 0
    violations: list[int] = field(default_factory=list)

    def offer(self, k: int, size: int, bits: int, n: int) -> None:
        cur = self.best.get(k)
        if cur is None or size < cur[0]:
            self.best[k] = (size, bits)
        if size < cardinality_lower_bound(n, k) and len(self.violations) < _MAX_VIOLATIONS:
            self.violations.append(bits)

    def merge(self, other: _Partial) -> None:
        # Earlier partial wins ties, so merging in chunk order is deterministic.
        for k, (size, bits) in other.best.items():
            cur = self.best.get(k)
            if cur is None or size < cur[0]:
                self.best[k] = (size, bits)
        self.visited += other.visited
        room = _MAX_VIOLATIONS - len(self.violations)
        self.violations.extend(other.violations[:room])


def _walk_chunk(args) -> _Partial:
    low_rows, start, n, masks = args
    part = _Partial()
    bound_all = cardinality_lower_bound(n, n)
    threshold = math.inf

    def visit(cur: int) -> None:
        nonlocal threshold
        size = cur.bit_count()
        if size and size < max(threshold, bound_all):
            k = _covered_count(cur, masks)
            if k:
                part.offer(k, size, cur, n)
                if len(part.best) == n:
                    threshold = max(s for s, _ in part.best.values())

    cur = start
    visit(cur)
    for i in range(1, 1 << len(low_rows)):
        cur ^= low_rows[(i & -i).bit_length() - 1]
        visit(cur)
    part.visited = 1 << len(low_rows)
    return part


def enumerate_minimums(
    n: int,
    budget: int = DEFAULT_SPAN_BUDGET,
    samples: int | None = None,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> MinimumReport:
    """Smallest octahedral system with k covered classes, for each k, over |V_i| = n.

    Walks the whole umbrella span in Gray-code order when 2**rank <= budget;
    otherwise draws ``samples`` (default ``budget`` capped at one million)
    uniformly random span elements and marks every entry non-exhaustive.
    """
    if n < 2:
        raise InputError(f"n must be at least 2, got {n}")
    sizes = (n,) * n
    basis = build_umbrella_basis(sizes, bit_budget)
    masks = _vertex_masks(sizes)
    rows = basis.reduced_form[::-1]
    r = len(rows)
    exhaustive = r < 63 and (1 << r) <= budget
    if exhaustive:
        t = min(_CHUNK_BITS, r)
        low, high = rows[: r - t], rows[r - t :]
        jobs = []
        for c in range(1 << t):
            start = 0
            for j, row in enumerate(high):
                if c >> j & 1:
                    start ^= row
            jobs.append((low, start, n, masks))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                partials = list(pool.map(_walk_chunk, jobs))
        else:
            partials = [_walk_chunk(j) for j in jobs]
        total = _Partial()
        for p in partials:
            total.merge(p)
    else:
        if samples is None:
            samples = min(budget, DEFAULT_SAMPLES)
        total = _sample(rows, n, masks, samples, seed)
    per_k = {
        k: MinimumEntry(k, size, EdgeSpaceVector(sizes, bits).to_system(), exhaustive)
        for k, (size, bits) in sorted(total.best.items())
    }
    violations = tuple(EdgeSpaceVector(sizes, b).to_system() for b in total.violations)
    return MinimumReport(n, r, per_k, total.visited, exhaustive, violations)


def _sample(rows: list[int], n: int, masks: list[list[int]], samples: int, seed: int) -> _Partial:
    rng = stream(seed, 0x6F2)
    r = len(rows)
    nbytes = (r + 7) // 8
    full = (1 << r) - 1
    part = _Partial()
    for _ in range(samples):
        coeffs = int.from_bytes(rng.bytes(nbytes), "little") & full
        cur = 0
        for j in _bit_positions(coeffs):
            cur ^= rows[j]
        size = cur.bit_count()
        if size:
            k = _covered_count(cur, masks)
            if k:
                part.offer(k, size, cur, n)
    part.visited = samples
    return part


def merge_reports(a: MinimumReport, b: MinimumReport) -> MinimumReport:
    """Component-wise minimum of two reports over the same n; ``a`` wins ties."""
    if a.n != b.n:
        raise InputError("cannot merge reports for different n")
    per_k = dict(a.per_k)
    for k, e in b.per_k.items():
        if k not in per_k or e.minimum < per_k[k].minimum:
            per_k[k] = e
    return MinimumReport(
        a.n,
        max(a.rank, b.rank),
        dict(sorted(per_k.items())),
        a.visited + b.visited,
        a.exhaustive and b.exhaustive,
        a.violations + b.violations,
    )


def brute_force_octahedral_count(class_sizes: Sequence[int]) -> int:
    """Count subsets of the edge space passing the parity check by trying all of them (tiny shapes only)."""
    from .octahedral import is_octahedral

    sizes = tuple(class_sizes)
    edges = list(itertools.product(*(range(s) for s in sizes)))
    if len(edges) > 16:
        raise ResourceError("brute force is limited to 16 edges")
    count = 0
    for mask in range(1 << len(edges)):
        chosen = [e for j, e in enumerate(edges) if mask >> j & 1]
        if is_octahedral(sizes, chosen):
            count += 1
    return count
