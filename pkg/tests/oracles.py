"""Reference computations that share no code with the package kernels."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull, Delaunay

from eulerstrata import Polytope, convex_hull, volume


def shoelace(points) -> Fraction:
    """Area of a convex polygon given its vertices in any order."""
    pts = [tuple(Fraction(c) for c in p) for p in points]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    pts.sort(key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))
    total = Fraction(0)
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        total += x0 * y1 - x1 * y0
    return abs(total) / 2


def brute_minkowski_vertices(a: Polytope, b: Polytope) -> set:
    """Extreme points of all pairwise sums, found by scipy in floating point."""
    sums = sorted({tuple(x + y for x, y in zip(p, q)) for p in a.vertices for q in b.vertices})
    arr = np.array([[float(c) for c in s] for s in sums])
    hull = ConvexHull(arr)
    return {sums[i] for i in hull.vertices}


def scipy_vertices(points) -> set:
    pts = sorted({tuple(Fraction(c) for c in p) for p in points})
    hull = ConvexHull(np.array([[float(c) for c in p] for p in pts]))
    return {pts[i] for i in hull.vertices}


def _lagrange_linear_coeffs(nodes) -> list[Fraction]:
    """Coefficient of ``x`` in each Lagrange basis polynomial on ``nodes``."""
    out = []
    for i, xi in enumerate(nodes):
        poly = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            # multiply by (x - xj)
            poly = [Fraction(0)] + poly
            for k in range(len(poly) - 1):
                poly[k] -= xj * poly[k + 1]
            denom *= xi - xj
        out.append(poly[1] / denom)
    return out


def interpolated_mixed_coefficient(bodies) -> Fraction:
    """Coefficient of ``l_1 ... l_d`` in ``Vol(l_1 S_1 + ... + l_d S_d)``.

    Exact tensor-grid interpolation on the nodes ``0, 1, ..., d``; the
    volume is a polynomial of degree at most ``d`` in each variable.
    """
    d = len(bodies)
    nodes = [Fraction(i) for i in range(d + 1)]
    weights = _lagrange_linear_coeffs(nodes)
    total = Fraction(0)
    for idx in itertools.product(range(d + 1), repeat=d):
        w = math.prod(weights[i] for i in idx)
        if w == 0:
            continue
        pts = [tuple(Fraction(0) for _ in range(d))]
        for i, body in zip(idx, bodies):
            lam = nodes[i]
            pts = [tuple(p + lam * v for p, v in zip(pt, vert))
                   for pt in pts for vert in body.vertices]
            pts = list(convex_hull(pts).vertices)
        total += w * volume(convex_hull(pts))
    return total


def monte_carlo_volume(body: Polytope, samples: int, seed: int) -> float:
    verts = np.array([[float(c) for c in v] for v in body.vertices])
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(samples, verts.shape[1]))
    inside = Delaunay(verts).find_simplex(pts) >= 0
    return float(np.prod(hi - lo)) * inside.mean()


def resultant_by_roots(f_roots, f_lead, g_coeffs_high_to_low) -> complex:
    """``Res(f, g) = lc(f)^deg(g) * prod g(r)`` over the roots ``r`` of ``f``."""
    deg_g = len(g_coeffs_high_to_low) - 1
    return f_lead ** deg_g * np.prod([np.polyval(g_coeffs_high_to_low, r) for r in f_roots])
