"""Exact colourful point configurations and colourful simplicial depth.

Coordinates are :class:`fractions.Fraction`.  The origin-containment test
has two independent routes: Cramer's rule on the affine system (valid when
the d+1 points are affinely independent) and an exact phase-one simplex on
{lambda >= 0, sum lambda = 1, sum lambda_j p_j = 0}.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import GenerationError, InconsistencyError, InputError
from .octahedral import OctahedralSystem
from .rng import DEFAULT_SEED, stream

Point = tuple[Fraction, ...]

GRID_DENOMINATOR = 1 << 16
MAX_ATTEMPTS = 10_000
STAGNATION_LIMIT = 500

_GEN_STREAM = 1
_SEARCH_STREAM = 2


class Status(str, enum.Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"
    DEGENERATE = "Degenerate"


# ---------------------------------------------------------------------------
# Rationals


def parse_rational(text: str | int) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; rejects zero denominators and non-integer parts."""
    if isinstance(text, bool):
        raise InputError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(f"not a rational: {text!r}")
    num, sep, den = text.strip().partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise InputError(f"not a rational: {text!r}") from None
    if q == 0:
        raise InputError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _as_point(p: Sequence) -> Point:
    return tuple(Fraction(c) for c in p)


# ---------------------------------------------------------------------------
# Exact linear algebra


def _det(rows: list[list]) -> Fraction | int:
    """Bareiss fraction-free determinant; exact for ints and Fractions alike."""
    m = [list(r) for r in rows]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                v = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
        prev = pivot
    return sign * m[-1][-1]


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan on a square system; ``None`` when singular."""
    size = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[-1] for row in aug]


def _null_vector(matrix: list[list[Fraction]]) -> list[Fraction] | None:
    """Some nonzero kernel vector of ``matrix`` (rows x cols), or ``None`` if the kernel is trivial."""
    rows = [[Fraction(v) for v in r] for r in matrix]
    ncols = len(rows[0])
    pivot_cols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    free = next((c for c in range(ncols) if c not in pivot_cols), None)
    if free is None:
        return None
    vec = [Fraction(0)] * ncols
    vec[free] = Fraction(1)
    for i, c in enumerate(pivot_cols):
        vec[c] = -rows[i][free]
    return vec


def _phase_one(a: list[list[Fraction]], b: list[Fraction]):
    """Exact feasibility of {A x = b, x >= 0} with b >= 0, by phase-one simplex and Bland's rule.

    Returns ``(True, x)`` or ``(False, y)`` where ``y`` satisfies
    y.A >= 0 and y.b < 0 (a Farkas certificate).
    """
    nrows = len(a)
    m = len(a[0])
    tab = [
        [Fraction(v) for v in a[i]] + [Fraction(int(i == j)) for j in range(nrows)] + [Fraction(b[i])]
        for i in range(nrows)
    ]
    basis = [m + i for i in range(nrows)]
    ncols = m + nrows
    while True:
        cb = [1 if basis[i] >= m else 0 for i in range(nrows)]
        entering = None
        for j in range(ncols):
            if j in basis:
                continue
            cost = (1 if j >= m else 0) - sum(cb[i] * tab[i][j] for i in range(nrows))
            if cost < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        best = None
        for i in range(nrows):
            if tab[i][entering] > 0:
                ratio = tab[i][-1] / tab[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        # phase one is bounded below by zero, so a leaving row always exists
        piv = tab[leave][entering]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [u - f * w for u, w in zip(tab[i], tab[leave])]
        basis[leave] = entering
    cb = [1 if basis[i] >= m else 0 for i in range(nrows)]
    objective = sum(cb[i] * tab[i][-1] for i in range(nrows))
    if objective == 0:
        x = [Fraction(0)] * m
        for i, j in enumerate(basis):
            if j < m:
                x[j] = tab[i][-1]
        return True, x
    # artificial columns of the final tableau hold B^-1; y_B = c_B B^-1 is the phase-one dual
    dual = [sum(cb[k] * tab[k][m + i] for k in range(nrows)) for i in range(nrows)]
    return False, [-v for v in dual]


# ---------------------------------------------------------------------------
# Containment


@dataclass(frozen=True)
class ContainmentResult:
    """Exact classification of the origin against conv(points), with a certificate.

    ``coefficients`` are barycentric weights (Inside, Boundary, Degenerate),
    ``functional`` is strictly positive on every point (Outside) and
    ``dependency`` is a nonzero affine dependency (Degenerate).
    """

    status: Status
    coefficients: tuple[Fraction, ...] | None = None
    functional: tuple[Fraction, ...] | None = None
    dependency: tuple[Fraction, ...] | None = None

    @property
    def contains(self) -> bool:
        return self.status is not Status.OUTSIDE

    def verify(self, points: Sequence[Sequence]) -> bool:
        pts = [_as_point(p) for p in points]
        d = len(pts[0])
        if self.status is Status.OUTSIDE:
            c = self.functional
            return c is not None and all(sum(ci * pi for ci, pi in zip(c, p)) > 0 for p in pts)
        lam = self.coefficients
        if lam is None or len(lam) != len(pts):
            return False
        ok = (
            all(v >= 0 for v in lam)
            and sum(lam) == 1
            and all(sum(l * p[i] for l, p in zip(lam, pts)) == 0 for i in range(d))
        )
        if self.status is Status.INSIDE:
            return ok and all(v > 0 for v in lam)
        if self.status is Status.BOUNDARY:
            return ok and any(v == 0 for v in lam)
        dep = self.dependency
        return (
            ok
            and dep is not None
            and any(v != 0 for v in dep)
            and sum(dep) == 0
            and all(sum(a * p[i] for a, p in zip(dep, pts)) == 0 for i in range(d))
        )


def _check_simplex(points: Sequence[Sequence]) -> list[Point]:
    pts = [_as_point(p) for p in points]
    if not pts:
        raise InputError("no points")
    d = len(pts[0])
    if d < 1:
        raise InputError("points need at least one coordinate")
    if len(pts) != d + 1:
        raise InputError(f"need exactly d+1 = {d + 1} points in dimension {d}, got {len(pts)}")
    if any(len(p) != d for p in pts):
        raise InputError("points have mixed dimensions")
    return pts


def _cofactors(pts: Sequence[Sequence]) -> list:
    """c_j with lambda_j = c_j / sum(c): signed d x d minors of the points without p_j."""
    d = len(pts) - 1
    out = []
    for j in range(d + 1):
        minor = [list(p) for i, p in enumerate(pts) if i != j]
        det = _det(minor)
        out.append(det if (d + j) % 2 == 0 else -det)
    return out


def _lp_containment(pts: list[Point]) -> ContainmentResult:
    d = len(pts[0])
    a = [[p[i] for p in pts] for i in range(d)] + [[Fraction(1)] * len(pts)]
    b = [Fraction(0)] * d + [Fraction(1)]
    feasible, vec = _phase_one(a, b)
    if not feasible:
        functional = tuple(vec[:d])
        return ContainmentResult(Status.OUTSIDE, functional=functional)
    lam = tuple(vec)
    dep = _null_vector(a)
    if dep is not None:
        return ContainmentResult(Status.DEGENERATE, coefficients=lam, dependency=tuple(dep))
    status = Status.INSIDE if all(v > 0 for v in lam) else Status.BOUNDARY
    return ContainmentResult(status, coefficients=lam)


def _solve_containment(pts: list[Point]) -> ContainmentResult | None:
    cof = _cofactors(pts)
    total = sum(cof)
    if total == 0:
        return None
    lam = tuple(Fraction(c) / total for c in cof)
    if all(v > 0 for v in lam):
        return ContainmentResult(Status.INSIDE, coefficients=lam)
    if all(v >= 0 for v in lam):
        return ContainmentResult(Status.BOUNDARY, coefficients=lam)
    # Pick weights w > 0 with w.lambda = -1; the row vector r solving r M = w
    # then gives r[:d].p_j = w_j + 1 > 0.
    pos = sum(v for v in lam if v >= 0)
    neg = -sum(v for v in lam if v < 0)
    heavy = (pos + 1) / neg
    w = [Fraction(1) if v >= 0 else heavy for v in lam]
    d = len(pts[0])
    m_t = [list(p) + [Fraction(1)] for p in pts]  # M transposed: row j is (p_j, 1)
    r = _solve(m_t, w)
    return ContainmentResult(Status.OUTSIDE, functional=tuple(r[:d]))


def contains_origin(points: Sequence[Sequence], method: str = "auto") -> ContainmentResult:
    """Classify the origin against the simplex spanned by d+1 points in R^d.

    ``method``: ``"solve"`` (affinely independent input only; raises
    :class:`InputError` otherwise), ``"lp"`` (exact feasibility) or ``"auto"``
    (solve, falling back to the LP for affinely dependent input).
    """
    pts = _check_simplex(points)
    if method == "lp":
        return _lp_containment(pts)
    res = _solve_containment(pts)
    if res is not None:
        return res
    if method == "solve":
        raise InputError("points are affinely dependent; the linear-solve route does not apply")
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    return _lp_containment(pts)


def _classify_fast(pts: Sequence[Sequence]) -> Status:
    """Status only, skipping certificates; ``pts`` may be int or Fraction coordinates."""
    cof = _cofactors(pts)
    total = sum(cof)
    if total == 0:
        return _lp_containment([_as_point(p) for p in pts]).status
    if total < 0:
        cof = [-c for c in cof]
    if any(c < 0 for c in cof):
        return Status.OUTSIDE
    return Status.INSIDE if all(c > 0 for c in cof) else Status.BOUNDARY


def origin_in_hull(points: Sequence[Sequence]) -> bool:
    """0 in conv(points) for any number of points, by exact feasibility."""
    pts = [_as_point(p) for p in points]
    d = len(pts[0])
    a = [[p[i] for p in pts] for i in range(d)] + [[Fraction(1)] * len(pts)]
    b = [Fraction(0)] * d + [Fraction(1)]
    return _phase_one(a, b)[0]


# ---------------------------------------------------------------------------
# Configurations


@dataclass(frozen=True)
class ColourfulConfiguration:
    d: int
    colours: tuple[tuple[Point, ...], ...]

    def __post_init__(self):
        if self.d < 1:
            raise InputError(f"dimension must be at least 1, got {self.d}")
        colours = tuple(tuple(_as_point(p) for p in c) for c in self.colours)
        if len(colours) != self.d + 1:
            raise InputError(f"need d+1 = {self.d + 1} colours, got {len(colours)}")
        for i, c in enumerate(colours):
            if not c:
                raise InputError(f"colour {i} is empty")
            for j, p in enumerate(c):
                if len(p) != self.d:
                    raise InputError(f"colour {i} point {j} has dimension {len(p)}, expected {self.d}")
        object.__setattr__(self, "colours", colours)

    @property
    def colour_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.colours)

    def replace_point(self, colour: int, index: int, point: Sequence) -> ColourfulConfiguration:
        colours = [list(c) for c in self.colours]
        colours[colour][index] = _as_point(point)
        return ColourfulConfiguration(self.d, tuple(tuple(c) for c in colours))

    def scale_colour(self, colour: int, factor: Fraction) -> ColourfulConfiguration:
        colours = list(self.colours)
        colours[colour] = tuple(tuple(factor * x for x in p) for p in colours[colour])
        return ColourfulConfiguration(self.d, tuple(colours))


def _integer_coordinates(config: ColourfulConfiguration) -> list[list[tuple[int, ...]]]:
    # Scaling each axis by a positive constant preserves every containment status.
    scale = [1] * config.d
    for c in config.colours:
        for p in c:
            for i, x in enumerate(p):
                scale[i] = math.lcm(scale[i], x.denominator)
    return [[tuple(int(x * s) for x, s in zip(p, scale)) for p in c] for c in config.colours]


@dataclass(frozen=True)
class DepthReport:
    depth: int
    boundary_count: int
    degenerate_count: int
    induced_system: OctahedralSystem


def induced_octahedral_system(config: ColourfulConfiguration) -> DepthReport:
    """Edges are the colourful simplices (one point per colour) whose closed hull holds the origin."""
    if any(s < 2 for s in config.colour_sizes):
        raise InputError("every colour needs at least two points")
    pts = _integer_coordinates(config)
    edges = []
    boundary = degenerate = 0
    for idx in itertools.product(*(range(len(c)) for c in pts)):
        status = _classify_fast([pts[i][j] for i, j in enumerate(idx)])
        if status is Status.OUTSIDE:
            continue
        edges.append(idx)
        if status is Status.BOUNDARY:
            boundary += 1
        elif status is Status.DEGENERATE:
            degenerate += 1
    system = OctahedralSystem(config.colour_sizes, frozenset(edges))
    return DepthReport(len(edges), boundary, degenerate, system)


def colourful_depth(config: ColourfulConfiguration) -> int:
    return induced_octahedral_system(config).depth


def depth_floor(d: int) -> int:
    return d * d + 1


# ---------------------------------------------------------------------------
# Generation and search


def _grid_points(rng: np.random.Generator, count: int, d: int) -> list[tuple[int, ...]]:
    raw = rng.integers(-GRID_DENOMINATOR, GRID_DENOMINATOR, size=(count, d), endpoint=True)
    return [tuple(int(v) for v in row) for row in raw]


def _contains_int(points: list[tuple[int, ...]]) -> bool:
    if len(points) == len(points[0]) + 1:
        return _classify_fast(points) is not Status.OUTSIDE
    return origin_in_hull(points)


def _to_config(d: int, colours: list[list[tuple[int, ...]]]) -> ColourfulConfiguration:
    return ColourfulConfiguration(
        d, tuple(tuple(tuple(Fraction(v, GRID_DENOMINATOR) for v in p) for p in c) for c in colours)
    )


def _draw_colours(d: int, size: int, rng: np.random.Generator, seed: int) -> list[list[tuple[int, ...]]]:
    colours = []
    for i in range(d + 1):
        for _ in range(MAX_ATTEMPTS):
            pts = _grid_points(rng, size, d)
            if _contains_int(pts):
                colours.append(pts)
                break
        else:
            raise GenerationError(f"colour {i}: no sample with the origin in its hull after {MAX_ATTEMPTS} tries", seed)
    return colours


def generate_configuration(
    d: int, seed: int = DEFAULT_SEED, colour_size: int | None = None, trial: int = 0
) -> ColourfulConfiguration:
    """Rejection-sample each colour on the 2**-16 grid in [-1, 1]^d until 0 is in its hull.

    ``trial`` selects an independent stream under the same seed, for batches.
    """
    if d < 1:
        raise InputError(f"dimension must be at least 1, got {d}")
    size = d + 1 if colour_size is None else colour_size
    if size < 1:
        raise InputError("colour size must be positive")
    rng = stream(seed, _GEN_STREAM, d, size, trial)
    return _to_config(d, _draw_colours(d, size, rng, seed))


def _depth_through(pts: list[list[tuple[int, ...]]], colour: int, index: int) -> int:
    ranges = [range(len(c)) if i != colour else (index,) for i, c in enumerate(pts)]
    count = 0
    for idx in itertools.product(*ranges):
        if _classify_fast([pts[i][j] for i, j in enumerate(idx)]) is not Status.OUTSIDE:
            count += 1
    return count


def _depth_int(pts: list[list[tuple[int, ...]]]) -> int:
    count = 0
    for idx in itertools.product(*(range(len(c)) for c in pts)):
        if _classify_fast([pts[i][j] for i, j in enumerate(idx)]) is not Status.OUTSIDE:
            count += 1
    return count


def minimize_depth_search(
    d: int,
    iterations: int,
    seed: int = DEFAULT_SEED,
    stagnation: int = STAGNATION_LIMIT,
) -> tuple[ColourfulConfiguration, int]:
    """Greedy descent on colourful depth by single-point replacement.

    A move replaces one random point with a fresh grid point; it is kept
    when the colour still surrounds the origin and the depth strictly drops.
    After ``stagnation`` rejected moves the walk restarts from a fresh
    configuration.  Stops early once depth d^2 + 1 is reached.
    """
    if d < 1:
        raise InputError(f"dimension must be at least 1, got {d}")
    rng = stream(seed, _SEARCH_STREAM, d)
    size = d + 1
    floor = depth_floor(d)
    cur = _draw_colours(d, size, rng, seed)
    depth = _depth_int(cur)
    best, best_depth = [list(c) for c in cur], depth
    stale = 0
    for _ in range(iterations):
        if best_depth <= floor:
            break
        colour = int(rng.integers(d + 1))
        index = int(rng.integers(size))
        point = _grid_points(rng, 1, d)[0]
        trial = list(cur[colour])
        trial[index] = point
        accepted = False
        if _contains_int(trial):
            old = _depth_through(cur, colour, index)
            cand = [c if i != colour else trial for i, c in enumerate(cur)]
            new = depth - old + _depth_through(cand, colour, index)
            if new < depth:
                cur, depth, accepted = cand, new, True
                if depth < best_depth:
                    best, best_depth = [list(c) for c in cur], depth
        if accepted:
            stale = 0
        else:
            stale += 1
            if stale >= stagnation:
                cur = _draw_colours(d, size, rng, seed)
                depth = _depth_int(cur)
                stale = 0
                if depth < best_depth:
                    best, best_depth = [list(c) for c in cur], depth
    if best_depth < floor:
        raise InconsistencyError(f"depth {best_depth} is below d^2 + 1 = {floor}; containment predicate is wrong")
    return _to_config(d, best), best_depth
