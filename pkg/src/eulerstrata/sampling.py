"""Random polytopes for the verification drivers and tests."""

from __future__ import annotations

import random
from fractions import Fraction

from .polytope import Polytope, convex_hull


def random_integer_polytope(rng: random.Random, dim: int, bound: int = 3,
                            min_points: int = 3, max_points: int = 6) -> Polytope:
    """Hull of 3-6 integer points drawn from the box ``[-bound, bound]^dim``."""
    count = rng.randint(min_points, max_points)
    return convex_hull([tuple(rng.randint(-bound, bound) for _ in range(dim))
                        for _ in range(count)])


def random_rational_polytope(rng: random.Random, dim: int, bound: int = 3,
                             max_den: int = 4, min_points: int = 3,
                             max_points: int = 6) -> Polytope:
    count = rng.randint(min_points, max_points)
    return convex_hull([tuple(Fraction(rng.randint(-bound * max_den, bound * max_den),
                                       rng.randint(1, max_den))
                              for _ in range(dim))
                        for _ in range(count)])


def random_full_dim_polytope(rng: random.Random, dim: int, bound: int = 3,
                             max_points: int = 8) -> Polytope:
    """Integer polytope guaranteed to have affine dimension ``dim``."""
    while True:
        p = random_integer_polytope(rng, dim, bound, dim + 1, max(dim + 1, max_points))
        if p.affine_dim == dim:
            return p


def random_segment(rng: random.Random, bound: int = 3) -> Polytope:
    a, b = sorted((rng.randint(-bound, bound), rng.randint(-bound, bound)))
    return convex_hull([(a,), (b,)])


def random_slab_pair(rng: random.Random, n: int, bound: int = 3):
    """``(L0, L1, L)``: bodies in the hyperplanes ``x_1 = 0`` and ``x_1 = 1``
    of R^{n+1} and the hull of their union."""
    base0 = random_integer_polytope(rng, n, bound)
    base1 = random_integer_polytope(rng, n, bound)
    lam0 = Polytope._from_vertices((Fraction(0),) + v for v in base0.vertices)
    lam1 = Polytope._from_vertices((Fraction(1),) + v for v in base1.vertices)
    whole = convex_hull(lam0.vertices + lam1.vertices)
    return base0, base1, whole
