"""Euler characteristics of root-coincidence strata.

For ``P_z(t) = p_0(z) t^k + ... + p_k(z)`` with generic Laurent coefficients
on fixed Newton polytopes, the torus ``(C*)^n`` splits by the degree of
``P_z`` and the coincidence pattern of its roots:

====  ======================================================
H     degree 3, distinct roots
I     degree 3, one double root
J     degree 3, triple root
K     degree 2, distinct roots
L     degree 2, double root
M     degree 1
N     degree 0
O     ``P_z`` identically zero
====  ======================================================

Every value below is evaluated literally from the closed forms, with signs
``(-1)^n`` left in place, so each line can be audited against the formula it
implements.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .newton import big_delta, ddd, delta_123, delta_star, lift_shift
from .polytope import (
    GeometryError,
    MixedVolumeCache,
    Polytope,
    convex_hull,
    eval_homogeneous,
    mixed_volume,
    q_polynomial,
    qnk,
    rat_str,
    scale,
)

LABELS = {2: ("K", "L", "M", "N", "O"),
          3: ("H", "I", "J", "K", "L", "M", "N", "O")}

OPEN_STRATUM = {2: "K", 3: "H"}


class StrataInvariantError(RuntimeError):
    """A computed characteristic broke zero-sum or integrality."""


@dataclass(frozen=True)
class StrataChi:
    degree: int
    values: Mapping[str, Fraction]

    def __post_init__(self):
        if self.degree not in LABELS:
            raise ValueError("degree must be 2 or 3")
        if tuple(sorted(self.values)) != tuple(sorted(LABELS[self.degree])):
            raise ValueError(f"labels must be {LABELS[self.degree]}")
        ordered = {k: Fraction(self.values[k]) for k in LABELS[self.degree]}
        object.__setattr__(self, "values", ordered)

    def check(self) -> "StrataChi":
        bad = [k for k, v in self.values.items() if v.denominator != 1]
        if bad:
            raise StrataInvariantError(f"non-integer Euler characteristic for {bad}")
        if sum(self.values.values()) != 0:
            raise StrataInvariantError("strata characteristics do not sum to zero")
        return self

    def __getitem__(self, label: str) -> Fraction:
        return self.values[label]

    def as_ints(self) -> dict[str, int]:
        return {k: int(v) for k, v in self.values.items()}

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.values.values())


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs


@dataclass
class StrataReport:
    chi: StrataChi
    relations: list[Relation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.residual == 0 for r in self.relations)

    def to_json_obj(self) -> dict:
        return {"degree": self.chi.degree,
                "chi": self.chi.as_ints(),
                "relations": [{"name": r.name, "residual": rat_str(r.residual)}
                              for r in self.relations]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def _common_dim(*bodies: Polytope) -> int:
    dims = {b.ambient_dim for b in bodies}
    if len(dims) != 1:
        raise GeometryError("dimension mismatch")
    return dims.pop()


def _vol(body: Polytope, cache) -> Fraction:
    return mixed_volume([body] * body.ambient_dim, cache)


def _sign_fact(n: int) -> int:
    return (-1) ** n * math.factorial(n)


def chi_deg2(d0: Polytope, d1: Polytope, d2: Polytope,
             cache: MixedVolumeCache | None = None) -> StrataChi:
    n = _common_dim(d0, d1, d2)
    ds = delta_star(d0, d1, d2)
    c = _sign_fact(n)

    v0 = _vol(d0, cache)
    vs = _vol(ds, cache)
    q_0s = qnk(n, 2, [d0, ds], cache)
    q_s2 = qnk(n, 2, [ds, d2], cache)
    q_01 = qnk(n, 2, [d0, d1], cache)
    q_012 = qnk(n, 3, [d0, d1, d2], cache)

    values = {
        "K": c * (v0 + 2 * vs + q_0s + q_s2 + q_01 + q_012),
        "L": -c * (2 * vs + q_0s + q_s2 + q_01 + q_012),
        "M": -c * (v0 + q_01),
        "N": c * (q_01 + q_012),
        "O": -c * q_012,
    }
    return StrataChi(2, values).check()


def consistency_deg2(d0: Polytope, d1: Polytope, d2: Polytope,
                     cache: MixedVolumeCache | None = None) -> StrataReport:
    """Check the degree-2 values against the hypersurface counts they solve.

    The zero set ``X`` of ``P`` in ``(C*)^n x C`` is counted both through the
    fibres over each stratum and directly from the volume of the lifted
    polytope, so this relation exercises the Newton polytope of ``P`` itself
    rather than the half-sum construction.
    """
    n = _common_dim(d0, d1, d2)
    chi = chi_deg2(d0, d1, d2, cache)
    K, L, M, N, O = (chi[x] for x in LABELS[2])
    c = _sign_fact(n)
    big = big_delta(2, [d0, d1, d2])
    chi_x = c * ((n + 1) * _vol(big, cache) - _vol(d2, cache))
    relations = [
        Relation("torus_total", K + L + M + N + O, Fraction(0)),
        Relation("all_vanish", O, -c * qnk(n, 3, [d0, d1, d2], cache)),
        Relation("leading_two_vanish", N + O, c * qnk(n, 2, [d0, d1], cache)),
        Relation("leading_vanishes", M + N + O, -c * _vol(d0, cache)),
        Relation("root_fibres", 2 * K + L + M + O, chi_x),
    ]
    return StrataReport(chi, relations)


@dataclass(frozen=True)
class _Deg3Terms:
    """Volume aggregates shared by the degree-3 values and their relations."""

    n: int
    v0: Fraction          # Vol(d0)
    v3: Fraction          # Vol(d3)
    q2_03: Fraction       # Q^n_2(d0, d3)
    q2_01: Fraction       # Q^n_2(d0, d1)
    q3_012: Fraction      # Q^n_3(d0, d1, d2)
    q3_123: Fraction      # Q^n_3(d1, d2, d3)
    q4_0123: Fraction     # Q^n_4(d0, d1, d2, d3)
    vol_big: Fraction     # Vol_{n+1}(Delta)
    q2_lift: Fraction     # Q^{n+1}_2(d0 at k_t = 0, Delta_123)
    q4_ddd: Fraction      # Q^{n+2}_4(Ddd_0, ..., Ddd_3)


def _deg3_terms(d0, d1, d2, d3, cache) -> _Deg3Terms:
    n = _common_dim(d0, d1, d2, d3)
    big = big_delta(3, [d0, d1, d2, d3])
    d123 = delta_123(d1, d2, d3)
    d0_lift = lift_shift(d0, [0])
    ddds = [ddd(i, d) for i, d in enumerate((d0, d1, d2, d3))]
    return _Deg3Terms(
        n=n,
        v0=_vol(d0, cache),
        v3=_vol(d3, cache),
        q2_03=qnk(n, 2, [d0, d3], cache),
        q2_01=qnk(n, 2, [d0, d1], cache),
        q3_012=qnk(n, 3, [d0, d1, d2], cache),
        q3_123=qnk(n, 3, [d1, d2, d3], cache),
        q4_0123=qnk(n, 4, [d0, d1, d2, d3], cache),
        vol_big=_vol(big, cache),
        q2_lift=qnk(n + 1, 2, [d0_lift, d123], cache),
        q4_ddd=qnk(n + 2, 4, ddds, cache),
    )


def _chi3_from_terms(t: _Deg3Terms) -> StrataChi:
    n = t.n
    c = _sign_fact(n)
    w = (n + 1) * (n + 2) * t.q4_ddd
    lifted = (n + 1) * (t.vol_big + t.q2_lift)
    y = (n + 1) * t.q2_lift
    values = {
        "H": c * (w + lifted - 2 * t.v0 - t.v3 - t.q2_03 - t.q3_123 - t.q4_0123),
        "I": -c * (2 * w + lifted - 3 * t.v0 - t.v3 - t.q2_03
                   - 2 * t.q3_123 - 2 * t.q4_0123),
        "J": c * (w - t.q3_123 - t.q4_0123),
        "K": -c * (y - t.v0 - t.q2_03 + t.q3_012 + t.q4_0123),
        "L": c * (y - 2 * t.v0 - t.q2_03 - t.q2_01 + t.q3_012 + t.q4_0123),
        "M": c * (t.q2_01 + t.q3_012),
        "N": -c * (t.q3_012 + t.q4_0123),
        "O": c * t.q4_0123,
    }
    return StrataChi(3, values).check()


def chi_deg3(d0: Polytope, d1: Polytope, d2: Polytope, d3: Polytope,
             cache: MixedVolumeCache | None = None) -> StrataChi:
    return _chi3_from_terms(_deg3_terms(d0, d1, d2, d3, cache))


def consistency_deg3(d0: Polytope, d1: Polytope, d2: Polytope, d3: Polytope,
                     cache: MixedVolumeCache | None = None) -> StrataReport:
    """Evaluate the eight linear relations the degree-3 values must solve.

    Right-hand sides come straight from the Newton-polytope counts of the
    auxiliary varieties; none of them reuses the closed forms.
    """
    t = _deg3_terms(d0, d1, d2, d3, cache)
    chi = _chi3_from_terms(t)
    H, I, J, K, L, M, N, O = (chi[x] for x in LABELS[3])
    n = t.n
    c = _sign_fact(n)
    relations = [
        Relation("torus_total", H + I + J + K + L + M + N + O, Fraction(0)),
        Relation("all_vanish", O, c * t.q4_0123),
        Relation("leading_three_vanish", N + O, -c * t.q3_012),
        Relation("leading_two_vanish", M + N + O, c * t.q2_01),
        Relation("leading_vanishes", K + L + M + N + O, -c * t.v0),
        Relation("quadratic_fibres", O + M + L + 2 * K,
                 -c * ((n + 1) * t.q2_lift - t.q2_03)),
        Relation("cubic_fibres", O + M + L + 2 * K + J + 2 * I + 3 * H,
                 c * ((n + 1) * t.vol_big - t.v3)),
        Relation("triple_root_locus", O + J,
                 c * ((n + 1) * (n + 2) * t.q4_ddd - t.q3_123)),
    ]
    return StrataReport(chi, relations)


def chi_L_reduced_a(d1: Polytope, d2: Polytope,
                    cache: MixedVolumeCache | None = None) -> Fraction:
    """Double-root stratum of ``t^2 + p_1 t + p_2`` via the half-sum hull."""
    n = _common_dim(d1, d2)
    ds = convex_hull(d1.vertices + scale(d2, Fraction(1, 2)).vertices)
    return (-1) ** (n - 1) * math.factorial(n) * (
        2 * _vol(ds, cache) + qnk(n, 2, [ds, d2], cache))


def chi_L_reduced_b(d1: Polytope, d2: Polytope,
                    cache: MixedVolumeCache | None = None) -> Fraction:
    """Same stratum, second closed form (doubled hull against ``d1``)."""
    n = _common_dim(d1, d2)
    ds = convex_hull(d1.vertices + scale(d2, Fraction(1, 2)).vertices)
    ds2 = scale(ds, 2)
    return (-1) ** (n - 1) * math.factorial(n) * (
        _vol(ds2, cache) - qnk(n, 2, [ds2, d1], cache) + qnk(n, 2, [d1, d2], cache))


def r_polynomial(n: int) -> dict[tuple[int, int, int], Fraction]:
    """``(2^n - 2) x0^n + Q2(x1, 2 x2) - Q2(2 x0, x1) - Q2(x0, 2 x2)``."""
    poly: dict[tuple[int, int, int], Fraction] = {}

    def add(exp, coeff):
        poly[exp] = poly.get(exp, Fraction(0)) + coeff

    add((n, 0, 0), Fraction(2 ** n - 2))
    if n >= 2:
        for (i, j) in q_polynomial(n, 2):
            add((0, i, j), Fraction(2 ** j))
            add((i, j, 0), -Fraction(2 ** i))
            add((i, 0, j), -Fraction(2 ** j))
    return {e: c for e, c in poly.items() if c}


def r_residual(s1: Polytope, s2: Polytope,
               cache: MixedVolumeCache | None = None) -> Fraction:
    """``R^n(S0, S1, S2)`` with ``S0 = conv(S1 u S2)``; expected to vanish."""
    n = _common_dim(s1, s2)
    s0 = convex_hull(s1.vertices + s2.vertices)
    return eval_homogeneous(r_polynomial(n), [s0, s1, s2], cache)


def r_residual_scaled(s1: Polytope, s2: Polytope,
                      cache: MixedVolumeCache | None = None) -> Fraction:
    """Same residual, but with the scalings applied to the bodies themselves.

    Cross-checks the coefficient bookkeeping of :func:`r_polynomial`: here
    ``2 S2`` and ``2 S0`` enter as polytopes and homogeneity is never used.
    """
    n = _common_dim(s1, s2)
    s0 = convex_hull(s1.vertices + s2.vertices)
    total = (2 ** n - 2) * _vol(s0, cache)
    if n >= 2:
        total += qnk(n, 2, [s1, scale(s2, 2)], cache)
        total -= qnk(n, 2, [scale(s0, 2), s1], cache)
        total -= qnk(n, 2, [s0, scale(s2, 2)], cache)
    return total
