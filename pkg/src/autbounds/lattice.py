"""Exact machinery for finite sets of integer lattice points.

Everything here is integer/rational exact. Mid-points of two integer points
are stored *doubled* (as the sum p+q), so sets of mid-points stay integral
and hashable; all mid-point counts are counts of the doubled set, which is in
bijection with the set of actual mid-points. numpy appears only as a bulk
integer counter for pair sums; there is no floating point in this module.

Main objects
    LatticeSet      deduplicated finite set of integer points, fixed ambient dim
    HalfPointSet    a mid-point set, stored doubled
    ConvexTriple    nested sets a1 <= a2 <= a3 (convexity validated on demand)

Main operations
    midpoint_set / midpoint_count / union_midpoint_count
    dimension, longest_chain, arrangement, arrange_all_axes
    in_convex_hull (exact rational simplex), is_integrally_convex,
    is_relatively_convex, lattice_points_in_hull
    squash_projection  (injective flattening maps that never increase
                        the mid-point union count)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Iterator, Optional

import numpy as np

from .errors import InvariantViolation

# Dense bitmap counting is used while the sum-box has at most this many cells
# (2**25 bools = 32 MiB worst case; typical instances are a few hundred KiB).
_DENSE_CELL_LIMIT = 1 << 25
_OUTER_CHUNK = 1 << 22


class LatticeSet:
    """A deduplicated finite set of integer points with a fixed ambient dim.

    Immutable; safe to share across workers. Points are plain int tuples.
    """

    __slots__ = ("points", "dim", "_sorted")

    def __init__(self, points: Iterable[tuple[int, ...]], dim: Optional[int] = None):
        pts = frozenset(tuple(int(c) for c in p) for p in points)
        if pts:
            dims = {len(p) for p in pts}
            if len(dims) != 1:
                raise InvariantViolation("all points in a LatticeSet must share one dimension")
            inferred = dims.pop()
            if dim is not None and dim != inferred:
                raise InvariantViolation(f"declared dim {dim} != point dim {inferred}")
            dim = inferred
        elif dim is None:
            raise InvariantViolation("an empty LatticeSet needs an explicit dim")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "_sorted", None)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeSet is immutable")

    # -- container protocol -------------------------------------------------
    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LatticeSet)
            and self.dim == other.dim
            and self.points == other.points
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.points))

    def __repr__(self) -> str:
        return f"LatticeSet(dim={self.dim}, n={len(self)})"

    def sorted_points(self) -> tuple[tuple[int, ...], ...]:
        cached = object.__getattribute__(self, "_sorted")
        if cached is None:
            cached = tuple(sorted(self.points))
            object.__setattr__(self, "_sorted", cached)
        return cached

    def issubset(self, other: "LatticeSet") -> bool:
        return self.points <= other.points

    def union(self, other: "LatticeSet") -> "LatticeSet":
        _require_same_dim(self, other)
        return LatticeSet(self.points | other.points, self.dim)

    def translate(self, v: tuple[int, ...]) -> "LatticeSet":
        return LatticeSet(
            (tuple(c + d for c, d in zip(p, v)) for p in self.points), self.dim
        )

    # -- serialization ------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"dim={self.dim}"]
        lines += [" ".join(str(c) for c in p) for p in self.sorted_points()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LatticeSet":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("dim="):
            raise InvariantViolation("lattice-set text must start with 'dim=<d>'")
        dim = int(lines[0].split("=", 1)[1])
        pts = [tuple(int(tok) for tok in ln.split()) for ln in lines[1:]]
        return cls(pts, dim)

    def to_json(self):
        return [list(p) for p in self.sorted_points()]

    @classmethod
    def from_json(cls, data, dim: Optional[int] = None) -> "LatticeSet":
        return cls((tuple(row) for row in data), dim)


def _require_same_dim(*sets: LatticeSet) -> int:
    dims = {s.dim for s in sets}
    if len(dims) != 1:
        raise InvariantViolation(f"dimension mismatch between sets: {sorted(dims)}")
    return dims.pop()


@dataclass(frozen=True)
class HalfPointSet:
    """A set of mid-points (p+q)/2, stored as the doubled integer sums p+q."""

    doubled: LatticeSet

    def __len__(self) -> int:
        return len(self.doubled)

    def contains_midpoint_of(self, p: tuple[int, ...], q: tuple[int, ...]) -> bool:
        return tuple(a + b for a, b in zip(p, q)) in self.doubled

    def integral_midpoints(self) -> LatticeSet:
        """The mid-points that are themselves lattice points (all coords even)."""
        pts = [
            tuple(c // 2 for c in s)
            for s in self.doubled
            if all(c % 2 == 0 for c in s)
        ]
        return LatticeSet(pts, self.doubled.dim)

    def union(self, other: "HalfPointSet") -> "HalfPointSet":
        return HalfPointSet(self.doubled.union(other.doubled))


class ConvexTriple:
    """Nested sets a1 <= a2 <= a3 in one ambient dimension.

    Nesting is enforced at construction. Integral convexity and relative
    convexity are *properties of the generated instances*, checked by
    :meth:`validate_convexity` (exact hull tests) where a test needs them;
    images under squash maps are nested but in general no longer convex.
    """

    __slots__ = ("a1", "a2", "a3", "witness_regions")

    def __init__(self, a1: LatticeSet, a2: LatticeSet, a3: LatticeSet,
                 witness_regions: Optional[str] = None):
        _require_same_dim(a1, a2, a3)
        if not a1.issubset(a2) or not a2.issubset(a3):
            raise InvariantViolation("ConvexTriple requires a1 <= a2 <= a3")
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)
        object.__setattr__(self, "a3", a3)
        object.__setattr__(self, "witness_regions", witness_regions)

    def __setattr__(self, name, value):
        raise AttributeError("ConvexTriple is immutable")

    @property
    def dim(self) -> int:
        return self.a3.dim

    def sizes(self) -> tuple[int, int, int]:
        return (len(self.a1), len(self.a2), len(self.a3))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConvexTriple)
            and (self.a1, self.a2, self.a3) == (other.a1, other.a2, other.a3)
        )

    def __hash__(self):
        return hash((self.a1, self.a2, self.a3))

    def __repr__(self) -> str:
        return f"ConvexTriple(dim={self.dim}, sizes={self.sizes()})"

    def validate_convexity(self) -> None:
        """Exact check of all invariants; raises InvariantViolation on failure.

        Desk scale only: enumerates lattice points of each hull.
        """
        for name, s in (("a1", self.a1), ("a2", self.a2), ("a3", self.a3)):
            if not is_integrally_convex(s):
                raise InvariantViolation(f"{name} is not integrally convex")
        if not is_relatively_convex(self.a1, self.a2):
            raise InvariantViolation("a1 is not relatively convex in a2")
        if not is_relatively_convex(self.a2, self.a3):
            raise InvariantViolation("a2 is not relatively convex in a3")

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "a1": self.a1.to_json(),
            "a2": self.a2.to_json(),
            "a3": self.a3.to_json(),
            "witness_regions": self.witness_regions,
        }

    @classmethod
    def from_json_dict(cls, data) -> "ConvexTriple":
        dim = data["dim"]
        return cls(
            LatticeSet.from_json(data["a1"], dim),
            LatticeSet.from_json(data["a2"], dim),
            LatticeSet.from_json(data["a3"], dim),
            data.get("witness_regions"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# mid-point sets and counts
# ---------------------------------------------------------------------------

def midpoint_set(a: LatticeSet, b: LatticeSet) -> HalfPointSet:
    """All mid-points (p+q)/2 with p in a, q in b, stored doubled."""
    dim = _require_same_dim(a, b)
    sums = {tuple(x + y for x, y in zip(p, q)) for p in a for q in b}
    return HalfPointSet(LatticeSet(sums, dim))


def _sum_frame(sets: list[LatticeSet]):
    """Common integer frame for encoding pair sums of points of the sets.

    Returns (mins, strides, cells) where index(p+q) = dot(p+q, strides) - base
    is injective over the sum box, or None when some set is empty.
    """
    pts = [p for s in sets for p in s]
    if not pts:
        return None
    dim = len(pts[0])
    mins = [min(p[c] for p in pts) for c in range(dim)]
    maxs = [max(p[c] for p in pts) for c in range(dim)]
    sumspan = [2 * (hi - lo) + 1 for lo, hi in zip(mins, maxs)]
    strides = [0] * dim
    acc = 1
    for c in reversed(range(dim)):
        strides[c] = acc
        acc *= sumspan[c]
    return mins, strides, acc


def _encode_array(s: LatticeSet, mins, strides) -> np.ndarray:
    arr = np.array(s.sorted_points(), dtype=np.int64)
    arr -= np.array(mins, dtype=np.int64)
    return arr @ np.array(strides, dtype=np.int64)


def _mark_pair_sums(bitmap: np.ndarray, codes_a: np.ndarray, codes_b: np.ndarray) -> None:
    if len(codes_a) == 0 or len(codes_b) == 0:
        return
    rows = max(1, _OUTER_CHUNK // len(codes_b))
    for start in range(0, len(codes_a), rows):
        chunk = codes_a[start:start + rows]
        bitmap[np.add.outer(chunk, codes_b).ravel()] = True


def _pair_sum_codes(pairs: list[tuple[LatticeSet, LatticeSet]]) -> int:
    """Count distinct sums p+q over the union of the given set pairs."""
    frame = _sum_frame([s for pair in pairs for s in pair])
    if frame is None:
        return 0
    mins, strides, cells = frame
    if cells <= _DENSE_CELL_LIMIT:
        bitmap = np.zeros(cells, dtype=bool)
        for a, b in pairs:
            _mark_pair_sums(bitmap, _encode_array(a, mins, strides),
                            _encode_array(b, mins, strides))
        return int(bitmap.sum())
    # sparse fallback: exact python-int codes, any dimension
    seen: set[int] = set()
    for a, b in pairs:
        codes_a = [sum((p[c] - mins[c]) * strides[c] for c in range(len(mins))) for p in a]
        codes_b = [sum((q[c] - mins[c]) * strides[c] for c in range(len(mins))) for q in b]
        for ca in codes_a:
            for cb in codes_b:
                seen.add(ca + cb)
    return len(seen)


def midpoint_count(a: LatticeSet, b: LatticeSet) -> int:
    """#(a.b) without materializing the doubled set."""
    _require_same_dim(a, b)
    return _pair_sum_codes([(a, b)])


def union_midpoint_count(a1: LatticeSet, a3: LatticeSet, a2: LatticeSet) -> int:
    """#(a1.a3 union a2.a2), the quantity every counting rule bounds below."""
    _require_same_dim(a1, a2, a3)
    return _pair_sum_codes([(a1, a3), (a2, a2)])


# ---------------------------------------------------------------------------
# dimension and chains
# ---------------------------------------------------------------------------

def integer_rank(rows: list[tuple[int, ...]]) -> int:
    """Rank over Q of integer row vectors, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    col = 0
    while m and col < ncols:
        pivot = next((i for i, row in enumerate(m) if row[col] != 0), None)
        if pivot is None:
            col += 1
            continue
        m[0], m[pivot] = m[pivot], m[0]
        head = m[0]
        reduced = []
        for row in m[1:]:
            if row[col] != 0:
                g = gcd(head[col], row[col])
                f_head, f_row = row[col] // g, head[col] // g
                row = [f_row * x - f_head * y for x, y in zip(row, head)]
            if any(row):
                reduced.append(row)
        m = reduced
        rank += 1
        col += 1
    return rank


def dimension(a: LatticeSet) -> int:
    """Dimension of the affine space generated by the set."""
    if not len(a):
        raise InvariantViolation("dimension of an empty set is undefined")
    pts = a.sorted_points()
    p0 = pts[0]
    return integer_rank([tuple(c - d for c, d in zip(p, p0)) for p in pts[1:]])


def _run_length(points: frozenset, start: tuple[int, ...], v: tuple[int, ...]) -> int:
    n = 1
    p = tuple(a + b for a, b in zip(start, v))
    while p in points:
        n += 1
        p = tuple(a + b for a, b in zip(p, v))
    return n


def _max_run_along(a: LatticeSet, v: tuple[int, ...]) -> int:
    pts = a.points
    best = 0
    for p in pts:
        prev = tuple(x - y for x, y in zip(p, v))
        if prev in pts:
            continue
        best = max(best, _run_length(pts, p, v))
    return best


def longest_chain(a: LatticeSet) -> int:
    """Length (point count) of the longest arithmetic progression inside a.

    A singleton is a chain of length 1 and any two points form a chain of
    length 2. Steps need not be primitive ({0, 2, 4} is a 3-chain); on an
    integrally convex set the two notions agree, but arranged or arbitrary
    sets can have gappy chains. A chain of length L in direction v forces
    (L-1)|v_c| to fit in the coordinate range R_c, so candidate directions
    are enumerated level by level: at level L only the box
    |v_c| <= R_c // (L-1) can host a run of length >= L. This is exact and
    fast even for sets of ~10^4 points.
    """
    n = len(a)
    if n == 0:
        raise InvariantViolation("longest_chain of an empty set is undefined")
    if n == 1:
        return 1
    pts = a.sorted_points()
    dim = a.dim
    ranges = [max(p[c] for p in pts) - min(p[c] for p in pts) for c in range(dim)]
    rmax = max(ranges)
    if rmax == 0:
        return 1
    best = 2  # any two distinct points
    for level in range(rmax + 1, 2, -1):
        caps = [r // (level - 1) for r in ranges]
        found = best
        for v in _canonical_directions(caps):
            run = _max_run_along(a, v)
            if run > found:
                found = run
        if found >= level:
            return found
        best = max(best, found)
    return best


def _canonical_directions(caps: list[int]) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors v with |v_c| <= caps[c], one per +/- pair.

    Non-primitive vectors are kept: gappy progressions are real chains on
    non-convex sets. The sign is fixed so the first nonzero entry is
    positive, which halves the search and makes it deterministic.
    """
    if all(c == 0 for c in caps):
        return
    ranges = [range(-c, c + 1) for c in caps]

    def rec(prefix, idx):
        if idx == len(caps):
            v = tuple(prefix)
            for c in v:
                if c != 0:
                    if c > 0:
                        yield v
                    break
            return
        for c in ranges[idx]:
            yield from rec(prefix + [c], idx + 1)

    yield from rec([], 0)


# ---------------------------------------------------------------------------
# arrangement (axis-wise compression)
# ---------------------------------------------------------------------------

def arrangement(a: LatticeSet, axis: int) -> LatticeSet:
    """Compress each fiber along `axis` to the prefix {0, ..., s-1}.

    Cardinality is preserved exactly; nested sets stay nested.
    """
    if not 0 <= axis < a.dim:
        raise InvariantViolation(f"axis {axis} out of range for dim {a.dim}")
    fibers: dict[tuple[int, ...], int] = {}
    for p in a:
        key = p[:axis] + p[axis + 1:]
        fibers[key] = fibers.get(key, 0) + 1
    new_pts = []
    for key, size in fibers.items():
        for i in range(size):
            new_pts.append(key[:axis] + (i,) + key[axis:])
    return LatticeSet(new_pts, a.dim)


def arrange_all_axes(a: LatticeSet) -> LatticeSet:
    """Arrange along every axis in order 0, 1, ..., dim-1.

    The result is a staircase (lower) set: compression along a later axis
    preserves lower-ness along the earlier ones.
    """
    out = a
    for axis in range(a.dim):
        out = arrangement(out, axis)
    return out


def is_staircase(a: LatticeSet) -> bool:
    """True iff the set is closed under coordinatewise decrease towards 0."""
    pts = a.points
    for p in pts:
        if any(c < 0 for c in p):
            return False
        for c in range(a.dim):
            if p[c] > 0:
                q = p[:c] + (p[c] - 1,) + p[c + 1:]
                if q not in pts:
                    return False
    return True


# ---------------------------------------------------------------------------
# exact convexity predicates
# ---------------------------------------------------------------------------

def in_convex_hull(point: tuple[int, ...], pts: Iterable[tuple[int, ...]]) -> bool:
    """Exact test: is `point` a convex combination of `pts`?

    Phase-1 simplex over Fractions with Bland's rule; no floating point.
    """
    pts = list(pts)
    if not pts:
        return False
    d = len(pts[0])
    point = tuple(point)
    if point in set(pts):
        return True
    for c in range(d):
        lo = min(p[c] for p in pts)
        hi = max(p[c] for p in pts)
        if not lo <= point[c] <= hi:
            return False
    m = len(pts)
    # rows: d coordinate constraints plus the affine constraint sum(l)=1
    nrows = d + 1
    tab = []
    for i in range(d):
        row = [Fraction(p[i]) for p in pts] + [Fraction(point[i])]
        tab.append(row)
    tab.append([Fraction(1)] * m + [Fraction(1)])
    for row in tab:
        if row[-1] < 0:
            for j in range(m + 1):
                row[j] = -row[j]
    # artificial columns form the starting identity basis
    for i, row in enumerate(tab):
        row[-1:-1] = [Fraction(1) if k == i else Fraction(0) for k in range(nrows)]
    ncols = m + nrows
    basis = list(range(m, m + nrows))
    # phase-1 objective: minimize the sum of artificials
    obj = [Fraction(0)] * (ncols + 1)
    for row in tab:
        for j in range(ncols + 1):
            obj[j] += row[j]
    for j in range(m, m + nrows):
        obj[j] -= 1  # reduced costs of basic artificials are zero

    while True:
        enter = next((j for j in range(m) if obj[j] > 0), None)
        if enter is None:
            return obj[-1] == 0
        ratios = [
            (tab[i][-1] / tab[i][enter], basis[i], i)
            for i in range(nrows)
            if tab[i][enter] > 0
        ]
        if not ratios:
            return False  # cannot happen for a bounded phase-1; defensive
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter


def lattice_points_in_hull(a: LatticeSet, max_candidates: int = 200_000) -> LatticeSet:
    """All integer points of conv(a). Desk scale: scans the bounding box."""
    if not len(a):
        return a
    pts = a.sorted_points()
    lo = [min(p[c] for p in pts) for c in range(a.dim)]
    hi = [max(p[c] for p in pts) for c in range(a.dim)]
    count = prod(h - l + 1 for l, h in zip(lo, hi))
    if count > max_candidates:
        raise InvariantViolation(
            f"bounding box has {count} lattice points; hull scan is desk-scale only"
        )
    inside = []
    members = a.points
    for p in _box_points(lo, hi):
        if p in members or in_convex_hull(p, pts):
            inside.append(p)
    return LatticeSet(inside, a.dim)


def _box_points(lo: list[int], hi: list[int]) -> Iterator[tuple[int, ...]]:
    if not lo:
        yield ()
        return
    for c in range(lo[0], hi[0] + 1):
        for rest in _box_points(lo[1:], hi[1:]):
            yield (c,) + rest


def is_integrally_convex(a: LatticeSet) -> bool:
    """True iff a equals the set of lattice points of its own convex hull."""
    if not len(a):
        return True
    return lattice_points_in_hull(a) == a


def is_relatively_convex(b: LatticeSet, a: LatticeSet) -> bool:
    """True iff no point of a - b lies in the convex hull of b."""
    if not b.issubset(a):
        raise InvariantViolation("is_relatively_convex requires b <= a")
    hull_pts = b.sorted_points()
    return not any(in_convex_hull(p, hull_pts) for p in a.points - b.points)


# ---------------------------------------------------------------------------
# injectivity-preserving flattening (squash) maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquashStep:
    axis: int
    t: int


@dataclass(frozen=True)
class SquashMap:
    """Record of one flattening map: translate, unimodular basis change,
    then a sequence of single-axis squashes x -> (..., x_i + t*x_axis, ..., 0).

    `t` in each step is the minimal integer strictly greater than the largest
    coordinate-sum |p|_1 + |q|_1 over pairs in the set being made injective,
    which is exactly what injectivity on that set needs; it is recorded here
    so any run can be replayed.
    """

    variant: str
    translation: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    steps: tuple[SquashStep, ...]

    def apply(self, p: tuple[int, ...]) -> tuple[int, ...]:
        q = tuple(c - t for c, t in zip(p, self.translation))
        q = _apply_matrix(self.basis, q)
        for step in self.steps:
            q = _squash_point(q, step.axis, step.t)
        return q

    def to_json_dict(self):
        return {
            "variant": self.variant,
            "translation": list(self.translation),
            "basis": [list(r) for r in self.basis],
            "steps": [{"axis": s.axis, "t": s.t} for s in self.steps],
        }


def _apply_matrix(u: tuple[tuple[int, ...], ...], p: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(u[i][j] * p[j] for j in range(len(p))) for i in range(len(u)))


def _squash_point(p: tuple[int, ...], axis: int, t: int) -> tuple[int, ...]:
    return tuple(
        0 if i == axis else (c + t * p[axis] if i < axis else c)
        for i, c in enumerate(p)
    )


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _flattening_basis(directions: list[tuple[int, ...]], n: int):
    """Unimodular U with U*d supported on the first r coordinates for every
    direction d; r is the rank. Found by integer row echelon on the n x k
    matrix whose columns are the directions.
    """
    k = len(directions)
    m = [[directions[j][i] for j in range(k)] for i in range(n)]
    u = _identity(n)
    r = 0
    for col in range(k):
        live = [i for i in range(r, n) if m[i][col] != 0]
        while len(live) > 1:
            live.sort(key=lambda i: abs(m[i][col]))
            i0 = live[0]
            for i in live[1:]:
                q = m[i][col] // m[i0][col]
                m[i] = [x - q * y for x, y in zip(m[i], m[i0])]
                u[i] = [x - q * y for x, y in zip(u[i], u[i0])]
            live = [i for i in live if m[i][col] != 0]
        if live:
            i0 = live[0]
            m[r], m[i0] = m[i0], m[r]
            u[r], u[i0] = u[i0], u[r]
            r += 1
            if r == n:
                break
    return tuple(tuple(row) for row in u), r


def _directions(s: LatticeSet) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    pts = s.sorted_points()
    p0 = pts[0]
    return p0, [tuple(c - d for c, d in zip(p, p0)) for p in pts[1:]]


def _squash_t(pts: Iterable[tuple[int, ...]]) -> int:
    big = max(sum(abs(c) for c in p) for p in pts)
    return 2 * big + 1


def squash_projection(triple: ConvexTriple, variant: str) -> tuple[ConvexTriple, SquashMap]:
    """Flatten a nested triple into a lower-dimensional coordinate slice.

    Variants (all return the image triple plus a replayable map record):

    - "reduce-a3": requires dim span(a2) < dim span(a3). a1 and a2 are fixed
      pointwise, a3 is mapped injectively into the span of a2.
    - "reduce-a2": requires dim span(a1) < dim span(a2) == dim span(a3).
      a1 fixed, a2 and a3 mapped, injectively on a3.
    - "reduce-all": requires equal spans of dimension >= 2. All three sets
      are mapped into a hyperplane, injectively on a3.

    The induced map on doubled mid-points is p+q -> phi(p)+phi(q), so the
    count #(a1.a3 union a2.a2) can only stay equal or drop.
    """
    n = triple.dim
    r1, r2, r3 = (dimension(s) for s in (triple.a1, triple.a2, triple.a3))
    if variant == "reduce-a3":
        if not r2 < r3:
            raise InvariantViolation(
                f"reduce-a3 requires dim span(a2) < dim span(a3), got {r2} == {r3}"
            )
        anchor_set, keep = triple.a2, r2
    elif variant == "reduce-a2":
        if not (r1 < r2 and r2 == r3):
            raise InvariantViolation(
                "reduce-a2 requires dim span(a1) < dim span(a2) == dim span(a3), "
                f"got ({r1}, {r2}, {r3})"
            )
        anchor_set, keep = triple.a1, r1
    elif variant == "reduce-all":
        if not (r1 == r2 == r3 and r3 >= 2):
            raise InvariantViolation(
                "reduce-all requires equal span dimensions >= 2, got "
                f"({r1}, {r2}, {r3})"
            )
        anchor_set, keep = triple.a3, r3 - 1
    else:
        raise InvariantViolation(f"unknown squash variant {variant!r}")

    p0, dirs = _directions(anchor_set)
    basis, _rank = _flattening_basis(dirs, n)

    def moved(s: LatticeSet) -> list[tuple[int, ...]]:
        return [_apply_matrix(basis, tuple(c - t for c, t in zip(p, p0))) for p in s]

    sets = {name: moved(getattr(triple, name)) for name in ("a1", "a2", "a3")}
    steps = []
    for axis in range(n - 1, keep - 1, -1):
        if all(p[axis] == 0 for pts in sets.values() for p in pts):
            continue
        t = _squash_t(sets["a3"])
        steps.append(SquashStep(axis, t))
        for name in sets:
            sets[name] = [_squash_point(p, axis, t) for p in sets[name]]
    image3 = LatticeSet(sets["a3"], n)
    if len(image3) != len(triple.a3):
        raise AssertionError("squash map failed to stay injective on a3")
    out = ConvexTriple(
        LatticeSet(sets["a1"], n), LatticeSet(sets["a2"], n), image3,
        witness_regions=f"squash[{variant}] of {triple.witness_regions or 'triple'}",
    )
    smap = SquashMap(variant, p0, basis, tuple(steps))
    return out, smap
