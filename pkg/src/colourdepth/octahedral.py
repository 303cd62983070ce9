"""Octahedral systems over V_1 x ... x V_n.

Vertices are 0-based inside the library: class ``i`` has vertices
``0 .. class_sizes[i] - 1`` and an edge is an n-tuple of vertex indices.
The JSON file format (see :mod:`colourdepth.formats`) is 1-based.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InputError, PreconditionError

Edge = tuple[int, ...]
Box = tuple[tuple[int, int], ...]

# Above this many classes the all-box tensor (C(m,2)^n entries) gets large;
# switch to the anchored-box check, which tests a basis of the box space.
BOX_ENUMERATION_MAX_N = 5


class VertexId(NamedTuple):
    class_index: int
    vertex_index: int


def _check_sizes(class_sizes: Sequence[int]) -> tuple[int, ...]:
    sizes = tuple(int(s) for s in class_sizes)
    if not sizes:
        raise InputError("need at least one class")
    for i, s in enumerate(sizes):
        if s < 2:
            raise InputError(f"class {i} has size {s}; classes need at least 2 vertices")
    return sizes


def _check_edges(class_sizes: tuple[int, ...], edges: Iterable[Sequence[int]]) -> frozenset[Edge]:
    n = len(class_sizes)
    out = set()
    for e in edges:
        t = tuple(int(c) for c in e)
        if len(t) != n:
            raise InputError(f"edge {t} has length {len(t)}, expected {n}")
        for i, (c, s) in enumerate(zip(t, class_sizes)):
            if not 0 <= c < s:
                raise InputError(f"edge {t}: component {i} = {c} out of range [0, {s})")
        out.add(t)
    return frozenset(out)


@dataclass(frozen=True)
class OctahedralSystem:
    """A set of edges over fixed classes.

    Constructing one directly only validates shapes and ranges; use
    :meth:`checked` to also enforce the parity condition.
    """

    class_sizes: tuple[int, ...]
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        sizes = _check_sizes(self.class_sizes)
        object.__setattr__(self, "class_sizes", sizes)
        object.__setattr__(self, "edges", _check_edges(sizes, self.edges))

    @classmethod
    def empty(cls, class_sizes: Sequence[int]) -> OctahedralSystem:
        return cls(tuple(class_sizes), frozenset())

    @classmethod
    def checked(cls, class_sizes: Sequence[int], edges: Iterable[Sequence[int]]) -> OctahedralSystem:
        system = cls(tuple(class_sizes), frozenset(tuple(e) for e in edges))
        box = find_odd_box(system.class_sizes, system.edges)
        if box is not None:
            raise InputError(f"parity condition fails on box {box}")
        return system

    @property
    def n(self) -> int:
        return len(self.class_sizes)

    @property
    def is_square(self) -> bool:
        """True when every class has exactly n vertices."""
        return all(s == self.n for s in self.class_sizes)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def incident(self, vertex: VertexId) -> frozenset[Edge]:
        i, x = vertex
        return frozenset(e for e in self.edges if e[i] == x)

    def __len__(self) -> int:
        return len(self.edges)

    def __bool__(self) -> bool:
        return bool(self.edges)

    def __xor__(self, other: OctahedralSystem) -> OctahedralSystem:
        return symmetric_difference(self, other)


def _indicator(class_sizes: tuple[int, ...], edges: Iterable[Edge]) -> np.ndarray:
    arr = np.zeros(class_sizes, dtype=np.uint8)
    edges = list(edges)
    if edges:
        arr[tuple(np.array(edges, dtype=np.intp).T)] = 1
    return arr


def _all_box_parities(arr: np.ndarray) -> tuple[np.ndarray, list[tuple[np.ndarray, np.ndarray]]]:
    # Axis i is replaced by its C(m_i, 2) pairs, in itertools.combinations order.
    pairs = []
    for axis, m in enumerate(arr.shape):
        a, b = np.triu_indices(m, 1)
        arr = np.take(arr, a, axis=axis) ^ np.take(arr, b, axis=axis)
        pairs.append((a, b))
    return arr, pairs


def _anchored_box_parities(arr: np.ndarray) -> np.ndarray:
    # Boxes {0, a} on every axis; any box {a, b} is the XOR of {0, a} and {0, b}.
    for axis, m in enumerate(arr.shape):
        arr = np.take(arr, np.arange(1, m), axis=axis) ^ np.take(arr, [0], axis=axis)
    return arr


def find_odd_box(
    class_sizes: Sequence[int], edges: Iterable[Sequence[int]], method: str = "auto"
) -> Box | None:
    """Return a box (one vertex pair per class) meeting ``edges`` an odd number of times.

    ``method`` is ``"boxes"`` (every box), ``"anchored"`` (boxes through
    vertex 0 of each class) or ``"auto"``.  Returns ``None`` when the parity
    condition holds.
    """
    sizes = _check_sizes(class_sizes)
    edge_set = _check_edges(sizes, edges)
    if not edge_set:
        return None
    if method == "auto":
        method = "boxes" if len(sizes) <= BOX_ENUMERATION_MAX_N else "anchored"
    arr = _indicator(sizes, edge_set)
    if method == "boxes":
        par, pairs = _all_box_parities(arr)
        bad = np.argwhere(par)
        if not len(bad):
            return None
        return tuple((int(a[j]), int(b[j])) for j, (a, b) in zip(bad[0], pairs))
    if method == "anchored":
        par = _anchored_box_parities(arr)
        bad = np.argwhere(par)
        if not len(bad):
            return None
        return tuple((0, int(j) + 1) for j in bad[0])
    raise ValueError(f"unknown parity method {method!r}")


def is_octahedral(class_sizes: Sequence[int], edges: Iterable[Sequence[int]], method: str = "auto") -> bool:
    """Parity condition: every box X_1 x ... x X_n with |X_i| = 2 holds an even number of edges."""
    return find_odd_box(class_sizes, edges, method) is None


def box_edges(box: Box) -> list[Edge]:
    return list(itertools.product(*box))


def _require_same_shape(a: OctahedralSystem, b: OctahedralSystem) -> None:
    if a.class_sizes != b.class_sizes:
        raise InputError(f"shape mismatch: {a.class_sizes} vs {b.class_sizes}")


def symmetric_difference(a: OctahedralSystem, b: OctahedralSystem) -> OctahedralSystem:
    _require_same_shape(a, b)
    out = OctahedralSystem(a.class_sizes, a.edges ^ b.edges)
    # octahedral systems are closed under xor; checked only when assertions are enabled
    assert not (is_octahedral(a.class_sizes, a.edges) and is_octahedral(b.class_sizes, b.edges)) or is_octahedral(
        out.class_sizes, out.edges
    )
    return out


# ---------------------------------------------------------------------------
# Umbrellas


@dataclass(frozen=True, order=True)
class Umbrella:
    """{x_1} x ... x V_colour x ... x {x_n}: determined by its colour and transversal.

    ``transversal`` lists the fixed vertices of the other classes in class
    order, skipping ``colour``.
    """

    colour: int
    transversal: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "transversal", tuple(int(t) for t in self.transversal))

    @classmethod
    def through(cls, edge: Sequence[int], colour: int) -> Umbrella:
        """The umbrella of the given colour that contains ``edge``."""
        return cls(colour, tuple(edge[:colour]) + tuple(edge[colour + 1 :]))

    def edge_at(self, x: int) -> Edge:
        t = self.transversal
        return t[: self.colour] + (x,) + t[self.colour :]

    def edges(self, class_sizes: Sequence[int]) -> list[Edge]:
        return [self.edge_at(x) for x in range(class_sizes[self.colour])]


def _check_umbrella(u: Umbrella, class_sizes: tuple[int, ...]) -> None:
    n = len(class_sizes)
    if not 0 <= u.colour < n:
        raise InputError(f"umbrella colour {u.colour} out of range [0, {n})")
    if len(u.transversal) != n - 1:
        raise InputError(f"transversal {u.transversal} must have length {n - 1}")
    others = [s for i, s in enumerate(class_sizes) if i != u.colour]
    for t, s in zip(u.transversal, others):
        if not 0 <= t < s:
            raise InputError(f"transversal {u.transversal} has an out-of-range vertex")


def expand_umbrella(u: Umbrella, class_sizes: Sequence[int]) -> OctahedralSystem:
    sizes = _check_sizes(class_sizes)
    _check_umbrella(u, sizes)
    return OctahedralSystem(sizes, frozenset(u.edges(sizes)))


def recompose(umbrellas: Iterable[Umbrella], class_sizes: Sequence[int]) -> OctahedralSystem:
    """Symmetric difference of the expansions of ``umbrellas``."""
    sizes = _check_sizes(class_sizes)
    acc: set[Edge] = set()
    for u in umbrellas:
        _check_umbrella(u, sizes)
        acc.symmetric_difference_update(u.edges(sizes))
    return OctahedralSystem(sizes, frozenset(acc))


def all_umbrellas(class_sizes: Sequence[int]) -> list[Umbrella]:
    """Every (colour, transversal) pair, colour-major, transversals lexicographic."""
    sizes = _check_sizes(class_sizes)
    out = []
    for c in range(len(sizes)):
        others = [range(s) for i, s in enumerate(sizes) if i != c]
        out.extend(Umbrella(c, t) for t in itertools.product(*others))
    return out


def random_umbrella(class_sizes: Sequence[int], rng: np.random.Generator) -> Umbrella:
    sizes = _check_sizes(class_sizes)
    colour = int(rng.integers(len(sizes)))
    t = tuple(int(rng.integers(s)) for i, s in enumerate(sizes) if i != colour)
    return Umbrella(colour, t)


def random_umbrella_combination(
    class_sizes: Sequence[int], count: int, rng: np.random.Generator
) -> OctahedralSystem:
    """Symmetric difference of ``count`` independently drawn umbrellas."""
    return recompose((random_umbrella(class_sizes, rng) for _ in range(count)), class_sizes)


# ---------------------------------------------------------------------------
# Degrees and coverage


@dataclass(frozen=True)
class CoverageReport:
    covered: frozenset[int]
    isolated: frozenset[VertexId]
    degrees: dict[VertexId, int]

    @property
    def k(self) -> int:
        return len(self.covered)


def degrees(system: OctahedralSystem) -> dict[VertexId, int]:
    counts: Counter = Counter()
    for e in system.edges:
        for i, x in enumerate(e):
            counts[i, x] += 1
    return {
        VertexId(i, x): counts[i, x]
        for i, s in enumerate(system.class_sizes)
        for x in range(s)
    }


def coverage(system: OctahedralSystem) -> CoverageReport:
    deg = degrees(system)
    isolated = frozenset(v for v, d in deg.items() if d == 0)
    uncovered = {v.class_index for v in isolated}
    covered = frozenset(i for i in range(system.n) if i not in uncovered)
    return CoverageReport(covered=covered, isolated=isolated, degrees=deg)


def covered_classes(system: OctahedralSystem) -> frozenset[int]:
    return coverage(system).covered


# ---------------------------------------------------------------------------
# Decompositions


def _require_square(system: OctahedralSystem) -> None:
    if not system.is_square:
        raise InputError(
            f"decompositions need |V_i| = n for every class; got sizes {system.class_sizes}"
        )


@dataclass(frozen=True)
class SuitableDecomposition:
    """(U, Omega_2, ..., Omega_n) together with W, the symmetric difference of U.

    ``parts[j - 1]`` holds the edges of Omega xor W incident with
    ``vertex_order[j]`` for j = 1 .. n-1.
    """

    i1: int
    vertex_order: tuple[int, ...]
    umbrellas: tuple[Umbrella, ...]
    parts: tuple[OctahedralSystem, ...]
    W: OctahedralSystem

    @property
    def x1(self) -> int:
        return self.vertex_order[0]

    def residual(self) -> OctahedralSystem:
        """Omega xor W, i.e. the union of the parts."""
        edges = frozenset().union(*(p.edges for p in self.parts))
        return OctahedralSystem(self.W.class_sizes, edges)


def suitable_decomposition(system: OctahedralSystem) -> SuitableDecomposition:
    """Split off the umbrellas through the lowest-degree vertex of the first covered class.

    Ties in degree are broken by vertex index.
    """
    _require_square(system)
    if not system:
        raise PreconditionError("suitable decomposition needs a nonempty system")
    report = coverage(system)
    if not report.covered:
        raise PreconditionError("no covered class; input is not an octahedral system")
    i1 = min(report.covered)
    n = system.n
    order = tuple(sorted(range(n), key=lambda x: (report.degrees[VertexId(i1, x)], x)))
    x1 = order[0]
    umbrellas = tuple(sorted(Umbrella.through(e, i1) for e in system.edges if e[i1] == x1))
    W = recompose(umbrellas, system.class_sizes)
    rest = system.edges ^ W.edges
    parts = tuple(
        OctahedralSystem(system.class_sizes, frozenset(e for e in rest if e[i1] == xj))
        for xj in order[1:]
    )
    return SuitableDecomposition(i1=i1, vertex_order=order, umbrellas=umbrellas, parts=parts, W=W)


def decomposition_checks(system: OctahedralSystem, dec: SuitableDecomposition) -> dict[str, bool]:
    """Evaluate the five structural properties of a suitable decomposition.

    Keys: ``disjoint`` (parts pairwise edge-disjoint), ``recomposes``
    (Omega = W xor parts), ``parts_octahedral``, ``degree_bound``
    (deg x_j >= max(|U|, |Omega_j| - |Omega_j & W|)) and ``uncovered_stay``
    (classes uncovered in Omega stay uncovered in Omega xor W and every part).
    Also ``umbrella_count`` (|U| = deg x_1).
    """
    deg = degrees(system)
    i1 = dec.i1
    seen: set[Edge] = set()
    disjoint = True
    for p in dec.parts:
        if seen & p.edges:
            disjoint = False
        seen |= p.edges
    acc = set(dec.W.edges)
    for p in dec.parts:
        acc ^= p.edges
    recomposes = frozenset(acc) == system.edges
    parts_oct = all(is_octahedral(p.class_sizes, p.edges) for p in dec.parts)
    m = len(dec.umbrellas)
    degree_bound = deg[VertexId(i1, dec.x1)] >= m
    for xj, p in zip(dec.vertex_order[1:], dec.parts):
        if deg[VertexId(i1, xj)] < max(m, len(p) - len(p.edges & dec.W.edges)):
            degree_bound = False
    uncovered = set(range(system.n)) - coverage(system).covered
    residual = OctahedralSystem(system.class_sizes, system.edges ^ dec.W.edges)
    uncovered_stay = not (uncovered & coverage(residual).covered) and all(
        not (uncovered & coverage(p).covered) for p in dec.parts
    )
    return {
        "disjoint": disjoint,
        "recomposes": recomposes,
        "parts_octahedral": parts_oct,
        "degree_bound": degree_bound,
        "uncovered_stay": uncovered_stay,
        "umbrella_count": m == deg[VertexId(i1, dec.x1)],
    }


def umbrella_decomposition(system: OctahedralSystem) -> frozenset[Umbrella]:
    """Write Omega as a symmetric difference of umbrellas whose colours are covered in Omega.

    Peels off a suitable decomposition's umbrellas and recurses on
    Omega xor W, which has strictly fewer covered classes.
    """
    _require_square(system)
    out: list[Umbrella] = []
    current = system
    covered_before = len(covered_classes(current))
    while current:
        dec = suitable_decomposition(current)
        out.extend(dec.umbrellas)
        current = OctahedralSystem(current.class_sizes, current.edges ^ dec.W.edges)
        covered_now = len(covered_classes(current))
        if covered_now >= covered_before:
            raise PreconditionError("covered-class count did not drop; input is not an octahedral system")
        covered_before = covered_now
    return frozenset(out)


def colour_condition_holds(umbrellas: Iterable[Umbrella], system: OctahedralSystem) -> bool:
    """Every colour used by ``umbrellas`` is a covered class of ``system``."""
    covered = covered_classes(system)
    return all(u.colour in covered for u in umbrellas)


# ---------------------------------------------------------------------------
# Cardinality bound


def cardinality_lower_bound(n: int, k: int) -> int:
    """k(n - 2) + 2: the least size of an octahedral system with k >= 1 covered classes, |V_i| = n."""
    if n < 2:
        raise InputError(f"n must be at least 2, got {n}")
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    return k * (n - 2) + 2


def verify_bound(system: OctahedralSystem) -> bool:
    _require_square(system)
    if not system:
        return True
    k = len(covered_classes(system))
    if k == 0:
        # impossible for octahedral input; a nonempty edge set with nothing covered
        return False
    return len(system) >= cardinality_lower_bound(system.n, k)
