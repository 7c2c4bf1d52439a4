"""Exact convex geometry over the rationals.

Polytopes are stored as V-representations with :class:`fractions.Fraction`
coordinates. Hulls are computed by an incremental beneath-beyond sweep with
integer determinant predicates (coordinates are rescaled to a common
denominator first), so every answer is exact.

Mixed volumes use the normalization ``MV(S, ..., S) = Vol(S)`` and are
evaluated through the alternating sum of volumes of Minkowski sums.
"""

from __future__ import annotations

import itertools
import json
import math
import threading
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

MAX_DIM = 6

Point = tuple[Fraction, ...]


class GeometryError(ValueError):
    """Raised for malformed geometric input (empty sets, dimension clashes)."""


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: nothing in this package is allowed to be inexact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"bad rational {value!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def as_point(coords: Iterable) -> Point:
    return tuple(as_rational(c) for c in coords)


# ---------------------------------------------------------------------------
# integer linear algebra
# ---------------------------------------------------------------------------


def _det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _normal(diffs: Sequence[Sequence[int]], r: int) -> list[int]:
    """Generalized cross product of ``r - 1`` vectors in Z^r."""
    normal = []
    for j in range(r):
        minor = [row[:j] + row[j + 1:] for row in diffs]
        d = _det(minor)
        normal.append(-d if j % 2 else d)
    return normal


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _affine_frame(pts: Sequence[Sequence[int]]):
    """Pick affinely independent points and pivot columns.

    Returns ``(indices, pivots)`` where ``indices[0]`` is the base point and
    ``len(pivots) == len(indices) - 1`` is the affine dimension. Projection
    onto ``pivots`` is injective on the affine hull.
    """
    base = pts[0]
    basis: list[list[Fraction]] = []  # reduced rows, one per pivot
    pivots: list[int] = []
    indices = [0]
    d = len(base)
    for idx in range(1, len(pts)):
        v = [Fraction(a - b) for a, b in zip(pts[idx], base)]
        for row, col in zip(basis, pivots):
            if v[col]:
                f = v[col] / row[col]
                v = [x - f * y for x, y in zip(v, row)]
        col = next((c for c in range(d) if v[c]), None)
        if col is None:
            continue
        basis.append(v)
        pivots.append(col)
        indices.append(idx)
        if len(pivots) == d:
            break
    return indices, pivots


def _rank(vectors: Sequence[Sequence], cap: int | None = None) -> int:
    """Exact rank by fraction-free elimination; stops early at ``cap``."""
    rows = []
    for v in vectors:
        den = math.lcm(*(Fraction(x).denominator for x in v)) if v else 1
        rows.append([int(Fraction(x) * den) for x in v])
    ncols = len(rows[0]) if rows else 0
    if cap is None:
        cap = ncols
    basis: list[tuple[int, list[int]]] = []
    for row in rows:
        for col, b in basis:
            if row[col]:
                f, g = row[col], b[col]
                row = [x * g - f * y for x, y in zip(row, b)]
        col = next((c for c in range(ncols) if row[c]), None)
        if col is None:
            continue
        basis.append((col, row))
        if len(basis) >= cap:
            break
    return len(basis)


# ---------------------------------------------------------------------------
# beneath-beyond hull
# ---------------------------------------------------------------------------


class _Hull:
    """Result of a hull computation on integer-rescaled, projected points."""

    __slots__ = ("vertex_ids", "facets", "volume", "affine_dim", "pivots",
                 "scale", "base", "frame")

    def __init__(self):
        self.vertex_ids: list[int] = []
        self.facets: list[tuple[tuple[int, ...], int]] = []  # (normal, offset)
        self.volume = Fraction(0)
        self.affine_dim = 0
        self.pivots: list[int] = []
        self.scale = 1
        self.base: tuple[int, ...] = ()
        self.frame: list[tuple[int, ...]] = []


def _full_dim_hull(pts: list[tuple[int, ...]], simplex: list[int]):
    """Beneath-beyond in Z^r for a full-dimensional point set.

    Returns ``(vertex indices, distinct facet planes, r! * volume * m^r,
    m)`` where ``m`` is the number of vertices used by the centroid.
    """
    r = len(pts[0])
    interior = [sum(pts[i][c] for i in simplex) for c in range(r)]
    scale_in = r + 1

    facets: dict[int, tuple[tuple[int, ...], list[int], int]] = {}
    ridges: dict[frozenset, set[int]] = {}
    next_id = 0

    def add_facet(verts: tuple[int, ...]):
        nonlocal next_id
        p0 = pts[verts[0]]
        diffs = [[a - b for a, b in zip(pts[v], p0)] for v in verts[1:]]
        nrm = _normal(diffs, r)
        off = _dot(nrm, p0)
        if _dot(nrm, interior) > scale_in * off:
            nrm = [-x for x in nrm]
            off = -off
        fid = next_id
        next_id += 1
        facets[fid] = (verts, nrm, off)
        for skip in range(r):
            ridge = frozenset(verts[:skip] + verts[skip + 1:])
            ridges.setdefault(ridge, set()).add(fid)

    def drop_facet(fid: int):
        verts, _, _ = facets.pop(fid)
        for skip in range(r):
            ridge = frozenset(verts[:skip] + verts[skip + 1:])
            owners = ridges[ridge]
            owners.discard(fid)
            if not owners:
                del ridges[ridge]

    outside: dict[int, list[int]] = {}

    def assign(candidates: Iterable[int], targets: Sequence[int]):
        for idx in candidates:
            p = pts[idx]
            for fid in targets:
                _, nrm, off = facets[fid]
                if _dot(nrm, p) > off:
                    outside.setdefault(fid, []).append(idx)
                    break

    for skip in range(r + 1):
        add_facet(tuple(simplex[:skip] + simplex[skip + 1:]))
    in_simplex = set(simplex)
    assign((i for i in range(len(pts)) if i not in in_simplex), list(facets))

    while outside:
        fid0, cands = next(iter(outside.items()))
        _, nrm0, off0 = facets[fid0]
        idx = max(cands, key=lambda i: _dot(nrm0, pts[i]) - off0)
        p = pts[idx]
        # visible facets form a connected patch around fid0
        vis = {fid0}
        stack = [fid0]
        horizon = []
        while stack:
            fid = stack.pop()
            verts = facets[fid][0]
            for skip in range(r):
                ridge_t = verts[:skip] + verts[skip + 1:]
                for other in ridges[frozenset(ridge_t)]:
                    if other == fid or other in vis:
                        continue
                    _, nrm, off = facets[other]
                    if _dot(nrm, p) > off:
                        vis.add(other)
                        stack.append(other)
                    else:
                        horizon.append(ridge_t)
        orphans = []
        for fid in vis:
            orphans.extend(i for i in outside.pop(fid, ()) if i != idx)
            drop_facet(fid)
        first_new = next_id
        for ridge_t in horizon:
            add_facet(ridge_t + (idx,))
        assign(orphans, range(first_new, next_id))

    # distinct supporting planes, primitive normals
    planes: dict[tuple[int, ...], set[int]] = {}
    for verts, nrm, off in facets.values():
        g = math.gcd(*nrm, off)
        key = tuple(x // g for x in nrm) + (off // g,)
        planes.setdefault(key, set()).update(verts)
    incident: dict[int, list[tuple[int, ...]]] = {}
    for key, members in planes.items():
        for i in members:
            incident.setdefault(i, []).append(key[:-1])
    vertex_ids = sorted(i for i, nrms in incident.items()
                        if len(nrms) >= r and _rank(nrms, r) == r)

    m = len(vertex_ids)
    centroid_m = [sum(pts[i][c] for i in vertex_ids) for c in range(r)]
    total = 0
    for verts, _, _ in facets.values():
        rows = [[m * a - c for a, c in zip(pts[v], centroid_m)] for v in verts]
        total += abs(_det(rows))
    plane_list = [(key[:-1], key[-1]) for key in planes]
    return vertex_ids, plane_list, total, m


def _compute_hull(points: Sequence[Point]) -> _Hull:
    out = _Hull()
    d = len(points[0])
    lcm = 1
    for p in points:
        for c in p:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ipts = [tuple(int(c * lcm) for c in p) for p in points]
    out.scale = lcm
    out.base = ipts[0]
    indices, pivots = _affine_frame(ipts)
    r = len(pivots)
    out.affine_dim = r
    out.pivots = pivots
    out.frame = [tuple(a - b for a, b in zip(ipts[i], ipts[0]))
                 for i in indices[1:]]
    if r == 0:
        out.vertex_ids = [0]
        return out
    proj = [tuple(p[c] for c in pivots) for p in ipts]
    if r == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i][0])
        hi = max(range(len(proj)), key=lambda i: proj[i][0])
        out.vertex_ids = sorted({lo, hi})
        out.facets = [((1,), proj[hi][0]), ((-1,), -proj[lo][0])]
        if d == 1:
            out.volume = Fraction(proj[hi][0] - proj[lo][0], lcm)
        return out
    vertex_ids, planes, total, m = _full_dim_hull(proj, indices)
    out.vertex_ids = vertex_ids
    out.facets = planes
    if r == d:
        out.volume = Fraction(total, math.factorial(d) * m ** d * lcm ** d)
    return out


# ---------------------------------------------------------------------------
# public types
# ---------------------------------------------------------------------------


class Polytope:
    """Convex hull of finitely many rational points in R^d.

    Hull reduction is lazy; equality and hashing go through the canonical
    (lexicographically sorted) vertex tuple.
    """

    __slots__ = ("ambient_dim", "generators", "_hull", "_vertices", "_hash",
                 "_lock")

    def __init__(self, points: Iterable[Iterable], dim: int | None = None):
        pts = {as_point(p) for p in points}
        if not pts:
            raise GeometryError("empty point set")
        dims = {len(p) for p in pts}
        if len(dims) != 1 or (dim is not None and dims != {dim}):
            raise GeometryError("dimension mismatch")
        d = dims.pop()
        if d < 1:
            raise GeometryError("ambient dimension must be positive")
        if d > MAX_DIM:
            raise GeometryError(f"ambient dimension {d} exceeds {MAX_DIM}")
        self.ambient_dim = d
        self.generators: tuple[Point, ...] = tuple(sorted(pts))
        self._hull: _Hull | None = None
        self._vertices: tuple[Point, ...] | None = None
        self._hash: int | None = None
        self._lock = threading.Lock()

    @classmethod
    def _from_vertices(cls, vertices: Iterable[Point]) -> "Polytope":
        """Trusted constructor for point sets already known to be extreme."""
        poly = cls(vertices)
        poly._vertices = poly.generators
        return poly

    def _ensure_hull(self) -> _Hull:
        if self._hull is None:
            with self._lock:
                if self._hull is None:
                    hull = _compute_hull(self.generators)
                    self._vertices = tuple(sorted(self.generators[i]
                                                  for i in hull.vertex_ids))
                    self._hull = hull
        return self._hull

    @property
    def vertices(self) -> tuple[Point, ...]:
        if self._vertices is None:
            self._ensure_hull()
        return self._vertices

    @property
    def affine_dim(self) -> int:
        return self._ensure_hull().affine_dim

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    def volume(self) -> Fraction:
        return self._ensure_hull().volume

    def contains(self, point: Iterable) -> bool:
        """Exact membership test against the hull's supporting planes."""
        p = as_point(point)
        if len(p) != self.ambient_dim:
            raise GeometryError("dimension mismatch")
        hull = self._ensure_hull()
        ip = [c * hull.scale for c in p]
        diff = [c - b for c, b in zip(ip, hull.base)]
        if hull.affine_dim == 0:
            return all(x == 0 for x in diff)
        if _rank(list(hull.frame) + [diff]) > hull.affine_dim:
            return False
        proj = [ip[i] for i in hull.pivots]
        return all(sum(a * b for a, b in zip(nrm, proj)) <= off
                   for nrm, off in hull.facets)

    def translate(self, vector: Iterable) -> "Polytope":
        v = as_point(vector)
        if len(v) != self.ambient_dim:
            raise GeometryError("dimension mismatch")
        return Polytope._from_vertices(
            tuple(a + b for a, b in zip(p, v)) for p in self.vertices)

    def __add__(self, other: "Polytope") -> "Polytope":
        return minkowski_sum(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.vertices == other.vertices)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.vertices))
        return self._hash

    def __repr__(self) -> str:
        verts = ", ".join("(" + ", ".join(str(c) for c in p) + ")"
                          for p in self.vertices)
        return f"Polytope(dim={self.ambient_dim}, vertices=[{verts}])"

    def to_json_obj(self) -> dict:
        return {"dim": self.ambient_dim,
                "points": [[_rat_str(c) for c in p] for p in self.vertices]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Polytope":
        if not isinstance(obj, Mapping) or "points" not in obj:
            raise GeometryError("polytope JSON needs a 'points' array")
        dim = obj.get("dim")
        if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool)):
            raise GeometryError("'dim' must be an integer")
        points = obj["points"]
        if not isinstance(points, list) or not all(isinstance(p, list) for p in points):
            raise GeometryError("'points' must be a list of coordinate lists")
        for p in points:
            for c in p:
                if isinstance(c, float):
                    raise GeometryError("float coordinates are not allowed; use 'p/q' strings")
        return cls(points, dim=dim)

    @classmethod
    def from_json(cls, text: str) -> "Polytope":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GeometryError(f"malformed polytope JSON: {exc}") from exc
        return cls.from_json_obj(obj)


def _rat_str(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rat_str(q: Fraction) -> str:
    """Render an exact rational as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(_rat_str(Fraction(q)))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def convex_hull(points: Iterable[Iterable]) -> Polytope:
    poly = Polytope(points)
    poly.vertices
    return poly


def minkowski_sum(a: Polytope, b: Polytope) -> Polytope:
    if a.ambient_dim != b.ambient_dim:
        raise GeometryError("dimension mismatch")
    return Polytope(tuple(x + y for x, y in zip(p, q))
                    for p in a.vertices for q in b.vertices)


def scale(a: Polytope, factor) -> Polytope:
    lam = as_rational(factor)
    if lam < 0:
        raise GeometryError("scale factor must be nonnegative")
    if lam == 0:
        return Polytope._from_vertices([(Fraction(0),) * a.ambient_dim])
    return Polytope._from_vertices(tuple(lam * c for c in p) for p in a.vertices)


def volume(a: Polytope) -> Fraction:
    return a.volume()


class MixedVolumeCache:
    """Memo table for mixed volumes and Minkowski-sum volumes.

    Keys are multisets of canonical polytopes. Safe to share between
    threads; concurrent misses may recompute the same (equal) value.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._mixed: dict = {}
        self._sums: dict = {}
        self.hits = 0
        self.misses = 0

    def _get(self, table, key):
        with self._lock:
            value = table.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def _put(self, table, key, value):
        with self._lock:
            return table.setdefault(key, value)

    def __len__(self) -> int:
        return len(self._mixed)

    def clear(self) -> None:
        with self._lock:
            self._mixed.clear()
            self._sums.clear()


DEFAULT_CACHE = MixedVolumeCache()


def _multiset_key(counts: Mapping[Polytope, int]) -> tuple:
    return tuple(sorted(((p.vertices, m) for p, m in counts.items() if m),
                        key=lambda item: item))


def _multiset_sum(counts: list[tuple[Polytope, int]], cache: MixedVolumeCache) -> Polytope:
    """Minkowski sum ``sum(m_i * P_i)``, memoized on every prefix."""
    key = _multiset_key(dict(counts))
    hit = cache._get(cache._sums, key)
    if hit is not None:
        return hit
    nonzero = [(p, m) for p, m in counts if m]
    if len(nonzero) == 1:
        p, m = nonzero[0]
        result = scale(p, m)
    else:
        head = nonzero[:-1]
        last, m = nonzero[-1]
        result = minkowski_sum(_multiset_sum(head, cache), scale(last, m))
    result.vertices
    return cache._put(cache._sums, key, result)


def mixed_volume(bodies: Sequence[Polytope], cache: MixedVolumeCache | None = None) -> Fraction:
    """Mixed volume of ``d`` bodies in R^d, normalized so MV(S,...,S) = Vol(S)."""
    if cache is None:
        cache = DEFAULT_CACHE
    bodies = list(bodies)
    if not bodies:
        raise GeometryError("arity must equal dimension")
    d = bodies[0].ambient_dim
    if any(b.ambient_dim != d for b in bodies):
        raise GeometryError("dimension mismatch")
    if len(bodies) != d:
        raise GeometryError("arity must equal dimension")
    counts = Counter(bodies)
    key = (_multiset_key(counts), d)
    hit = cache._get(cache._mixed, key)
    if hit is not None:
        return hit
    if any(b.is_point for b in counts):
        return cache._put(cache._mixed, key, Fraction(0))
    distinct = sorted(counts, key=lambda p: p.vertices)
    mults = [counts[p] for p in distinct]
    total = Fraction(0)
    for choice in itertools.product(*(range(m + 1) for m in mults)):
        size = sum(choice)
        if size == 0:
            continue
        ways = math.prod(math.comb(m, c) for m, c in zip(mults, choice))
        vol = _multiset_sum(list(zip(distinct, choice)), cache).volume()
        total += (-1) ** (d - size) * ways * vol
    value = total / math.factorial(d)
    return cache._put(cache._mixed, key, value)


HomogeneousPoly = Mapping[tuple[int, ...], object]


def eval_homogeneous(poly: HomogeneousPoly, bodies: Sequence[Polytope],
                     cache: MixedVolumeCache | None = None) -> Fraction:
    """Substitute convex bodies into a homogeneous polynomial.

    ``poly`` maps exponent tuples (one entry per body) to rational
    coefficients; each monomial becomes the mixed volume of the bodies
    repeated according to its exponents.
    """
    bodies = list(bodies)
    if not bodies:
        raise GeometryError("need at least one body")
    d = bodies[0].ambient_dim
    if any(b.ambient_dim != d for b in bodies):
        raise GeometryError("dimension mismatch")
    total = Fraction(0)
    for exps, coeff in poly.items():
        if len(exps) != len(bodies):
            raise GeometryError("monomial arity does not match number of bodies")
        if any(e < 0 for e in exps):
            raise GeometryError("negative exponent in homogeneous polynomial")
        if sum(exps) != d:
            raise GeometryError(
                f"polynomial must be homogeneous of degree {d} (the ambient dimension)")
        c = as_rational(coeff)
        if c == 0:
            continue
        args = [b for b, e in zip(bodies, exps) for _ in range(e)]
        total += c * mixed_volume(args, cache)
    return total


def compositions(n: int, k: int):
    """Compositions of ``n`` into ``k`` positive parts, lexicographic."""
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def q_polynomial(n: int, k: int) -> dict[tuple[int, ...], Fraction]:
    """Degree-``n`` part of prod x_i / (1 - x_i) as an exponent map."""
    if n <= 0 or k <= 0:
        raise GeometryError("n and k must be positive")
    return {c: Fraction(1) for c in compositions(n, k)}


def qnk(n: int, k: int, bodies: Sequence[Polytope],
        cache: MixedVolumeCache | None = None) -> Fraction:
    bodies = list(bodies)
    if n <= 0 or k <= 0:
        raise GeometryError("n and k must be positive")
    if len(bodies) != k:
        raise GeometryError(f"expected {k} bodies, got {len(bodies)}")
    if any(b.ambient_dim != n for b in bodies):
        raise GeometryError(f"bodies must live in R^{n}")
    poly = q_polynomial(n, k)
    if not poly:
        return Fraction(0)
    return eval_homogeneous(poly, bodies, cache)


def project_out(a: Polytope, axis: int) -> Polytope:
    """Drop coordinate ``axis`` from every vertex."""
    if a.ambient_dim < 2:
        raise GeometryError("cannot project a 1-dimensional polytope")
    return Polytope(p[:axis] + p[axis + 1:] for p in a.vertices)
