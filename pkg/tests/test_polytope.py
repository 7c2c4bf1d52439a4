import itertools
import threading
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import int_points, polytopes, rational_points
from eulerstrata import (
    GeometryError,
    MixedVolumeCache,
    Polytope,
    convex_hull,
    eval_homogeneous,
    minkowski_sum,
    mixed_volume,
    qnk,
    scale,
    volume,
)
from eulerstrata.polytope import as_rational, compositions, q_polynomial
from oracles import brute_minkowski_vertices, scipy_vertices, shoelace

SQUARE = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
TRIANGLE = convex_hull([(0, 0), (1, 0), (0, 1)])
E1 = convex_hull([(0, 0), (1, 0)])
E2 = convex_hull([(0, 0), (0, 1)])
CUBE = convex_hull(list(itertools.product((0, 1), repeat=3)))


def vset(p):
    return set(p.vertices)


# --- hull -------------------------------------------------------------------------


def test_interior_point_dropped():
    p = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))])
    assert vset(p) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert p.affine_dim == 2


def test_singleton():
    p = convex_hull([(0, 0)])
    assert p.vertices == ((0, 0),)
    assert p.is_point and p.affine_dim == 0


def test_collinear_middle_dropped():
    p = convex_hull([(0, 0), (2, 0), (1, 0)])
    assert vset(p) == {(0, 0), (2, 0)}
    assert p.affine_dim == 1


def test_hull_errors():
    with pytest.raises(GeometryError, match="empty point set"):
        convex_hull([])
    with pytest.raises(GeometryError, match="dimension mismatch"):
        convex_hull([(0, 0), (1,)])


def test_floats_rejected():
    with pytest.raises((GeometryError, TypeError, ValueError)):
        convex_hull([(0.5, 0)])
    assert as_rational("3/6") == F(1, 2)


def test_vertices_sorted_and_equality_by_vertex_set():
    a = convex_hull([(1, 1), (0, 0), (1, 0), (0, 1), (F(1, 3), F(1, 3))])
    b = convex_hull([(0, 1), (1, 0), (1, 1), (0, 0)])
    assert a == b and hash(a) == hash(b)
    assert list(a.vertices) == sorted(a.vertices)


@given(rational_points(3, max_size=9))
def test_hull_idempotent_3d(pts):
    p = convex_hull(pts)
    assert convex_hull(p.vertices) == p


@given(st.integers(1, 5).flatmap(lambda d: rational_points(d, max_size=9)))
def test_hull_idempotent_any_dim(pts):
    p = convex_hull(pts)
    assert convex_hull(p.vertices) == p
    assert all(p.contains(q) for q in pts)


@given(st.integers(2, 4).flatmap(lambda d: int_points(d, bound=4, min_size=8, max_size=20)))
def test_vertices_agree_with_scipy(pts):
    p = convex_hull(pts)
    if p.affine_dim < p.ambient_dim:
        return
    assert vset(p) == scipy_vertices(pts)


def test_affine_dim_of_embedded_triangle():
    p = convex_hull([(0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 1), (F(1, 3), F(1, 3), 0, 1)])
    assert p.affine_dim == 2
    assert len(p.vertices) == 3
    assert volume(p) == 0


# --- Minkowski sums, scaling ------------------------------------------------------


def test_square_plus_square():
    assert minkowski_sum(SQUARE, SQUARE) == convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)])


def test_sum_with_point_translates():
    p = convex_hull([(3, -1)])
    assert minkowski_sum(TRIANGLE, p) == TRIANGLE.translate((3, -1))


def test_triangle_plus_square_pentagon():
    expected = {(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)}
    got = minkowski_sum(TRIANGLE, SQUARE)
    assert vset(got) == expected
    assert brute_minkowski_vertices(TRIANGLE, SQUARE) == expected


@given(polytopes(2), polytopes(2), polytopes(2))
def test_minkowski_assoc_comm(a, b, c):
    assert minkowski_sum(a, b) == minkowski_sum(b, a)
    assert minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c))


@given(polytopes(3, max_size=5), polytopes(3, max_size=5))
def test_minkowski_vertices_match_reference(a, b):
    s = minkowski_sum(a, b)
    if s.affine_dim == 3:
        assert vset(s) == brute_minkowski_vertices(a, b)


def test_minkowski_dimension_mismatch():
    with pytest.raises(GeometryError):
        minkowski_sum(SQUARE, CUBE)


def test_scale_examples():
    assert scale(convex_hull([(0,), (2,)]), F(1, 2)) == convex_hull([(0,), (1,)])
    doubled = scale(SQUARE, 2)
    assert doubled == convex_hull([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert volume(doubled) == 4
    assert scale(TRIANGLE, 1) == TRIANGLE
    assert scale(TRIANGLE, 0) == convex_hull([(0, 0)])
    with pytest.raises(GeometryError):
        scale(SQUARE, -1)


@given(polytopes(3, rational=True), st.fractions(0, 5, max_denominator=6))
def test_scale_volume_law(a, lam):
    assert volume(scale(a, lam)) == lam ** 3 * volume(a)


# --- volume -----------------------------------------------------------------------


def test_volume_examples():
    assert volume(SQUARE) == 1
    assert volume(convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])) == F(1, 6)
    assert volume(convex_hull([(0, 0), (1, 0)])) == 0


@given(int_points(2, bound=6, min_size=3, max_size=10))
def test_area_matches_shoelace(pts):
    p = convex_hull(pts)
    expected = shoelace(p.vertices) if p.affine_dim == 2 else 0
    assert volume(p) == expected


@given(rational_points(3, max_size=6), rational_points(3, max_size=4))
def test_volume_monotone(inner_pts, extra):
    a = convex_hull(inner_pts)
    b = convex_hull(list(a.vertices) + extra)
    assert all(b.contains(v) for v in a.vertices)
    assert 0 <= volume(a) <= volume(b)


@given(polytopes(4, max_size=7), st.tuples(*[st.integers(-5, 5)] * 4))
def test_volume_translation_invariant(a, v):
    assert volume(a.translate(v)) == volume(a)


# --- mixed volumes ----------------------------------------------------------------


def test_mixed_volume_examples():
    assert mixed_volume([SQUARE, SQUARE]) == 1
    assert mixed_volume([E1, E2]) == F(1, 2)
    # area(T + Q) = 7/2 by shoelace on the pentagon; (7/2 - 1/2 - 1) / 2
    pent = shoelace([(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)])
    assert pent == F(7, 2)
    assert mixed_volume([TRIANGLE, SQUARE]) == (pent - F(1, 2) - 1) / 2 == 1
    rect = convex_hull([(0, 0), (1, 0), (0, 2), (1, 2)])
    assert mixed_volume([E1, rect]) == (4 - 0 - 2) / F(2) == 1


def test_mixed_volume_errors():
    with pytest.raises(GeometryError, match="arity must equal dimension"):
        mixed_volume([SQUARE])
    with pytest.raises(GeometryError):
        mixed_volume([SQUARE, CUBE])


def test_point_argument_gives_zero():
    assert mixed_volume([TRIANGLE, convex_hull([(5, 5)])]) == 0


@given(polytopes(3, rational=True), polytopes(3, rational=True), polytopes(3, rational=True))
def test_mixed_volume_symmetric(a, b, c):
    values = {mixed_volume(list(perm), MixedVolumeCache()) for perm in itertools.permutations((a, b, c))}
    assert len(values) == 1


@given(polytopes(2, rational=True), polytopes(2, rational=True), polytopes(2, rational=True))
def test_mixed_volume_additive(a, a2, b):
    cache = MixedVolumeCache()
    assert mixed_volume([minkowski_sum(a, a2), b], cache) == \
        mixed_volume([a, b], cache) + mixed_volume([a2, b], cache)


@given(polytopes(3), polytopes(3), polytopes(3), polytopes(3))
def test_mixed_volume_additive_3d(a, a2, b, c):
    cache = MixedVolumeCache()
    assert mixed_volume([minkowski_sum(a, a2), b, c], cache) == \
        mixed_volume([a, b, c], cache) + mixed_volume([a2, b, c], cache)


@given(st.integers(1, 4).flatmap(lambda d: polytopes(d, rational=True)))
def test_diagonal_is_volume(s):
    assert mixed_volume([s] * s.ambient_dim) == volume(s)


@given(polytopes(3), polytopes(3), polytopes(3),
       st.tuples(*[st.fractions(-3, 3, max_denominator=5)] * 3))
def test_mixed_volume_translation(a, b, c, v):
    base = mixed_volume([a, b, c], MixedVolumeCache())
    assert mixed_volume([a, b.translate(v), c], MixedVolumeCache()) == base


def test_cache_is_pure_memo():
    bodies = [TRIANGLE, SQUARE]
    cache = MixedVolumeCache()
    first = mixed_volume(bodies, cache)
    assert mixed_volume(list(reversed(bodies)), cache) == first
    assert cache.hits >= 1
    assert mixed_volume(bodies, MixedVolumeCache()) == first


def test_cache_shared_across_threads():
    cache = MixedVolumeCache()
    bodies = [[convex_hull([(0, 0, 0), (i, 0, 0), (0, 1, 0), (0, 0, 1)]), CUBE, CUBE]
              for i in range(1, 5)]
    expected = [mixed_volume(b, MixedVolumeCache()) for b in bodies]
    results = {}

    def work(i):
        results[i] = [mixed_volume(b, cache) for b in bodies]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == expected for r in results.values())


# --- homogeneous polynomials and Q^n_k --------------------------------------------


def test_eval_homogeneous_examples():
    assert eval_homogeneous({(2,): 1}, [SQUARE]) == 1
    assert eval_homogeneous({(1, 1): 1}, [E1, E2]) == F(1, 2)
    assert eval_homogeneous({(2, 0): 1, (1, 1): -2, (0, 2): 1}, [TRIANGLE, TRIANGLE]) == 0


@given(polytopes(2, rational=True))
def test_square_of_difference_collapses(a):
    assert eval_homogeneous({(2, 0): 1, (1, 1): -2, (0, 2): 1}, [a, a]) == 0


def test_eval_homogeneous_errors():
    with pytest.raises(GeometryError):
        eval_homogeneous({(2, 0): 1, (1, 0): 1}, [SQUARE, SQUARE])
    with pytest.raises(GeometryError):
        eval_homogeneous({(3,): 1}, [SQUARE])


def test_compositions_lexicographic():
    assert list(compositions(4, 2)) == [(1, 3), (2, 2), (3, 1)]
    assert list(compositions(1, 2)) == []
    assert len(q_polynomial(5, 3)) == 6


def test_qnk_examples():
    assert qnk(1, 2, [convex_hull([(0,), (3,)])] * 2) == 0
    assert qnk(2, 2, [SQUARE, SQUARE]) == 1
    assert qnk(3, 2, [CUBE, CUBE]) == 2


def test_qnk_errors():
    with pytest.raises((GeometryError, ValueError)):
        qnk(0, 2, [])
    with pytest.raises((GeometryError, ValueError)):
        qnk(2, 0, [])


# --- JSON -------------------------------------------------------------------------


@given(polytopes(3, rational=True))
def test_json_round_trip(p):
    assert Polytope.from_json(p.to_json()) == p


def test_json_form():
    p = convex_hull([(F(1, 2), 0), (1, 1)])
    assert p.to_json_obj() == {"dim": 2, "points": [["1/2", 0], [1, 1]]}
    with pytest.raises((GeometryError, TypeError, ValueError)):
        Polytope.from_json('{"dim": 1, "points": [[0.5]]}')
    with pytest.raises(GeometryError):
        Polytope.from_json('{"dim": 2, "points": [[1]]}')
