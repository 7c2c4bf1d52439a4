"""Direct stratification of C* for one parameter.

At ``n = 1`` every stratum except the open one is a finite set, so its Euler
characteristic is a point count and the open stratum gets minus the total.
The event points are the roots in C* of ``p_0 * disc_t(P)``. They are found
numerically, and then every point is classified by evaluating the
coefficients and clustering the ``t``-roots of ``P_z``. Two guards protect
each trial:

* the number of numerically distinct events must equal the exact count
  given by the squarefree part of ``p_0 * disc`` (gcd with its derivative),
  and the number of events with ``p_0 = 0`` must equal the exact degree of
  ``gcd(events, p_0)``;
* any decision that lands between the working-precision noise floor and
  ``10 tol`` marks the trial ambiguous, and the caller redraws it.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .newton import GenericSystemSpec, LaurentPolynomial, random_generic
from .polytope import Polytope, convex_hull
from .strata import LABELS, OPEN_STRATUM, chi_deg2, chi_deg3

WORK_DPS = 60

# labels on which the leading coefficient vanishes
LEADING_ZERO = {2: frozenset("MNO"), 3: frozenset("KLMNO")}


def _canon(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class UniPoly:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` multiplies ``z**i``; trailing zeros are stripped so the
    zero polynomial has no coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        # integral values are kept as int: the oracle's data is integer and
        # Fraction arithmetic dominates the exact resultants otherwise
        cs = [_canon(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        quot = [0] * max(len(rem) - dq, 1)
        for i in range(len(rem) - 1, dq - 1, -1):
            f = _canon(Fraction(rem[i]) / lead)
            if f:
                quot[i - dq] = f
                for j, c in enumerate(other.coeffs):
                    rem[i - dq + j] -= f * c
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.lead()
        return UniPoly([Fraction(c) / lead for c in self.coeffs])

    def strip_z(self) -> tuple["UniPoly", int]:
        """Divide out the largest power of ``z``; returns the power too."""
        m = 0
        while m < len(self.coeffs) and self.coeffs[m] == 0:
            m += 1
        return UniPoly(self.coeffs[m:]), m

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _primitive(f: UniPoly) -> list[int]:
    """Integer coefficient list of ``f`` up to a rational factor, content 1."""
    den = math.lcm(*(Fraction(c).denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    g = math.gcd(*ints)
    sign = -1 if ints[-1] < 0 else 1
    return [sign * c // g for c in ints]


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (low-to-high lists)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while r and len(r) - 1 >= db:
        shift, lr = len(r) - 1 - db, r[-1]
        r = [x * lb for x in r]
        for j, c in enumerate(b):
            r[shift + j] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(UniPoly(r)) if r else [])
    return a


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q, by primitive pseudo-remainders over Z."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    return UniPoly(_int_gcd(_primitive(a), _primitive(b))).monic()


def squarefree_part(f: UniPoly) -> UniPoly:
    """Primitive integer polynomial with the distinct roots of ``f``."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree <= 0:
        return UniPoly([1])
    pf = _primitive(f)
    g = _int_gcd(pf, _primitive(f.derivative()))
    return UniPoly(_primitive(UniPoly(pf).exact_div(UniPoly(g))))


def distinct_roots_cstar(f: UniPoly) -> int:
    """Number of distinct roots of ``f`` in C \\ {0}, exactly."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    stripped, _ = f.strip_z()
    return squarefree_part(stripped).degree


# --- polynomials in t with UniPoly coefficients --------------------------------
# A "t-polynomial" is a list of UniPoly, highest power of t first, matching
# P = p_0 t^k + p_1 t^(k-1) + ... + p_k.


def _check_tpoly(f: Sequence[UniPoly]):
    if not f or all(c.is_zero() for c in f):
        raise ValueError("zero polynomial in t")


def sylvester_matrix(f: Sequence[UniPoly], g: Sequence[UniPoly]) -> list[list[UniPoly]]:
    """Rows of ``f`` first (``deg g`` of them), then ``deg f`` rows of ``g``."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = UniPoly()
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def _det_poly(rows: list[list[UniPoly]]) -> UniPoly:
    """Bareiss determinant over Q[z]; every division is exact."""
    n = len(rows)
    if n == 0:
        return UniPoly([1])
    m = [list(r) for r in rows]
    sign = 1
    prev = UniPoly([1])
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return UniPoly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).exact_div(prev)
        prev = pivot
    return m[n - 1][n - 1] * sign


def resultant(f: Sequence[UniPoly], g: Sequence[UniPoly]) -> UniPoly:
    """Sylvester resultant in ``t`` using the formal degrees of ``f`` and ``g``."""
    _check_tpoly(f)
    _check_tpoly(g)
    if len(f) == 1 and len(g) == 1:
        return UniPoly([1])
    return _det_poly(sylvester_matrix(f, g))


def t_derivative(f: Sequence[UniPoly]) -> list[UniPoly]:
    k = len(f) - 1
    return [c * (k - i) for i, c in enumerate(f[:-1])]


def discriminant_t(P: Sequence[UniPoly]) -> UniPoly:
    k = len(P) - 1
    if k not in (2, 3):
        raise ValueError("degree in t must be 2 or 3")
    if P[0].is_zero():
        raise ValueError("leading coefficient is identically zero")
    if k == 2:
        p0, p1, p2 = P
        return p1 * p1 - p0 * p2 * 4
    return resultant(P, t_derivative(P))


def normalize_laurent(polys: Sequence[LaurentPolynomial]) -> tuple[list[UniPoly], int]:
    """Multiply all coefficients by one common ``z^m`` to clear negative powers.

    A common shift multiplies ``P_z`` by a unit on C*, so neither roots in
    ``t`` nor strata move.
    """
    exps = [e[0] for p in polys for e in p.terms]
    shift = -min(exps) if exps else 0
    out = []
    for p in polys:
        if p.num_vars != 1:
            raise ValueError("the oracle works with univariate coefficients")
        cs = [Fraction(0)] * (max((e[0] for e in p.terms), default=-shift) + shift + 1)
        for (e,), c in p.terms.items():
            cs[e + shift] = c
        out.append(UniPoly(cs))
    return out, shift


# --- numeric classification ------------------------------------------------------


class Ambiguous(Exception):
    """A numeric decision fell inside the guard band."""


def _numeric_roots(f: UniPoly) -> list:
    """High-precision roots of a squarefree polynomial with nonzero constant term.

    Companion-matrix eigenvalues in double precision seed a Newton polish at
    ``WORK_DPS`` digits; if the polished roots collide, fall back to
    mpmath's Durand-Kerner on the full polynomial.
    """
    deg = f.degree
    if deg <= 0:
        return []
    coeffs_hi = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coeffs)]
    seeds = np.roots([float(c) for c in reversed(f.coeffs)])
    roots = []
    for s in seeds:
        z = mpmath.mpc(complex(s))
        for _ in range(200):
            fz, dz = mpmath.polyval(coeffs_hi, z, derivative=True)
            if dz == 0:
                break
            step = fz / dz
            z -= step
            if abs(step) <= abs(z) * mpmath.mpf(10) ** (-WORK_DPS + 5):
                break
        roots.append(z)
    if _distinct_count(roots) != deg or not all(_small(f, coeffs_hi, z) for z in roots):
        roots = list(mpmath.polyroots(coeffs_hi, maxsteps=2000, extraprec=4 * WORK_DPS))
    return roots


def _small(f, coeffs_hi, z) -> bool:
    scale = sum(abs(c) * abs(z) ** i for i, c in enumerate(reversed(coeffs_hi)))
    return abs(mpmath.polyval(coeffs_hi, z)) <= scale * mpmath.mpf(10) ** (-WORK_DPS // 2)


def _distinct_count(roots, rel=mpmath.mpf(10) ** -20) -> int:
    reps: list = []
    fast: list[complex] = []
    for z in roots:
        zc = complex(z)
        # pairs far apart in double precision need no multiprecision test
        near = [w for w, wc in zip(reps, fast)
                if abs(zc - wc) <= 1e-6 * max(1.0, abs(zc), abs(wc))]
        if not any(abs(z - w) <= rel * max(1, abs(z), abs(w)) for w in near):
            reps.append(z)
            fast.append(zc)
    return len(reps)


def noise_floor():
    """Relative size below which a computed value is treated as an exact zero.

    Values at true zeros come out near ``10**-WORK_DPS``; coincident
    ``t``-roots separate by up to the cube root of that. A quarter of the
    working digits leaves a wide margin over both.
    """
    return mpmath.mpf(10) ** (-WORK_DPS // 4)


def _decide(rel, tol: float, what: str) -> bool:
    """True for zero, False for nonzero; raises inside the guard band.

    The band runs from the noise floor up to ``10 * tol``: between the two a
    quantity is neither clearly numerical noise nor clearly separated.
    """
    if rel < noise_floor():
        return True
    if rel <= 10 * tol:
        raise Ambiguous(f"{what} {float(rel):.3e} inside guard band")
    return False


def _is_zero_at(p: UniPoly, z, tol: float) -> bool:
    if p.is_zero():
        return True
    val = abs(p(z))
    scale = sum(abs(c) * abs(z) ** i for i, c in enumerate(p.coeffs))
    return _decide(val / scale, tol, "coefficient value")


def _cluster_sizes(roots, tol: float) -> list[int]:
    sizes: list[int] = []
    reps: list = []
    for r in roots:
        for idx, w in enumerate(reps):
            if _decide(abs(r - w) / max(1, abs(r), abs(w)), tol, "t-root separation"):
                sizes[idx] += 1
                break
        else:
            reps.append(r)
            sizes.append(1)
    return sorted(sizes, reverse=True)


def _cbrt_branches(c):
    base = mpmath.cbrt(c) if c != 0 else mpmath.mpc(0)
    omega = mpmath.exp(2j * mpmath.pi / 3)
    return [base * omega ** k for k in range(3)]


def _t_roots(values) -> list:
    """Roots of ``sum values[i] t^(deg - i)`` (leading value nonzero), deg <= 3.

    Closed forms only: iterative solvers converge slowly at the multiple
    roots that are the whole point of the classification.
    """
    deg = len(values) - 1
    a = values
    if deg == 1:
        return [-a[1] / a[0]]
    if deg == 2:
        disc = mpmath.sqrt(a[1] ** 2 - 4 * a[0] * a[2])
        return [(-a[1] + disc) / (2 * a[0]), (-a[1] - disc) / (2 * a[0])]
    a0, b, c, d = a
    shift = -b / (3 * a0)
    p = (3 * a0 * c - b * b) / (3 * a0 * a0)
    q = (2 * b ** 3 - 9 * a0 * b * c + 27 * a0 * a0 * d) / (27 * a0 ** 3)
    root = mpmath.sqrt(q * q / 4 + p ** 3 / 27)
    # pick the branch that avoids cancellation in -q/2 +- root
    inner = -q / 2 + root if abs(-q / 2 + root) >= abs(-q / 2 - root) else -q / 2 - root
    out = []
    for u in _cbrt_branches(inner):
        x = u - p / (3 * u) if u != 0 else mpmath.mpc(0)
        out.append(x + shift)
    return out


def classify_point(P: Sequence[UniPoly], z, tol: float) -> str:
    """Stratum label of the parameter value ``z`` (raises Ambiguous)."""
    k = len(P) - 1
    zero = [_is_zero_at(p, z, tol) for p in P]
    first = next((i for i, zr in enumerate(zero) if not zr), None)
    if first is None:
        return "O"
    deg = k - first
    if deg == 0:
        return "N"
    if deg == 1:
        return "M"
    values = [p(z) for p in P[first:]]
    sizes = _cluster_sizes(_t_roots(values), tol)
    if deg == 2:
        return "K" if sizes == [1, 1] else "L"
    return {(1, 1, 1): "H", (2, 1): "I", (3,): "J"}[tuple(sizes)]


@dataclass
class Classification:
    counts: dict[str, int]
    exact_events: int
    numeric_events: int


def _common_cstar_root(*polys: UniPoly) -> bool:
    g = polys[0].strip_z()[0]
    for p in polys[1:]:
        g = poly_gcd(g, p.strip_z()[0])
    return g.degree > 0


def _edge_polynomials(P: Sequence[UniPoly]) -> list[UniPoly]:
    """Restrictions of ``P(z, t)`` to the edges of its Newton polygon.

    Each edge polynomial is written in the lattice step along the edge, so
    its roots in C* are what the face conditions talk about.
    """
    k = len(P) - 1
    support = {(j, k - i): c for i, p in enumerate(P) for j, c in enumerate(p.coeffs) if c}
    pts = list(support)
    verts = [tuple(int(x) for x in v) for v in convex_hull(pts).vertices]
    if len(verts) < 2:
        return []

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    edges = []
    for u, v in itertools.combinations(verts, 2):
        sides = {(cross(u, v, w) > 0) - (cross(u, v, w) < 0) for w in verts}
        sides.discard(0)
        if len(sides) <= 1:
            edges.append((u, v))
    out = []
    for u, v in edges:
        dx, dy = v[0] - u[0], v[1] - u[1]
        g = math.gcd(dx, dy)
        sx, sy = dx // g, dy // g
        coeffs = [Fraction(0)] * (g + 1)
        for p, c in support.items():
            if cross(u, v, p) == 0:
                j = ((p[0] - u[0]) * sx + (p[1] - u[1]) * sy) // (sx * sx + sy * sy)
                if 0 <= j <= g:
                    coeffs[j] = c
        out.append(UniPoly(coeffs))
    return out


def genericity_defect(P: Sequence[UniPoly], degree: int) -> str | None:
    """First violated hypothesis among those decidable exactly at ``n = 1``.

    Screened: single coefficient systems have simple roots in C*; the
    coefficient pairs and triples in the genericity hypotheses share no root; the
    edge polynomials of the Newton polygon of ``P`` have simple roots in C*;
    at degree 3, the trailing quadratic has simple roots wherever
    ``p_0`` vanishes. Smoothness of ``P = 0`` in the open torus and the
    triple-root system are not screened; violations there surface as
    mismatches. Returns ``None`` when every screened condition holds.
    """
    singles = [0] if degree == 2 else [0, 3]
    for i in singles:
        if not P[i].is_zero() and distinct_roots_cstar(P[i]) != P[i].strip_z()[0].degree:
            return f"p_{i} has a repeated root"
    groups = [(0, 1)] if degree == 2 else [(0, 1), (0, 3), (1, 2, 3)]
    for group in groups:
        if _common_cstar_root(*(P[i] for i in group)):
            return "common root of " + ", ".join(f"p_{i}" for i in group)
    for edge in _edge_polynomials(P):
        if distinct_roots_cstar(edge) != edge.strip_z()[0].degree:
            return "edge polynomial of the Newton polygon has a repeated root"
    if degree == 3:
        _, p1, p2, p3 = P
        if _common_cstar_root(P[0], p2 * p2 - p1 * p3 * 4):
            return "trailing quadratic has a double root where p_0 vanishes"
    return None


def classify_strata_1d(P: Sequence[UniPoly], degree: int, tol: float = 1e-8) -> Classification:
    """Count event points per stratum label for one coefficient draw.

    Raises :class:`Ambiguous` if a guard trips or the exact event count
    disagrees with the numeric one.
    """
    if degree not in (2, 3) or len(P) != degree + 1:
        raise ValueError("need degree + 1 coefficients with degree 2 or 3")
    defect = genericity_defect(P, degree)
    if defect:
        raise Ambiguous(f"non-generic draw: {defect}")
    disc = discriminant_t(P)
    if disc.is_zero():
        raise Ambiguous("discriminant vanishes identically")
    events = (P[0] * disc).strip_z()[0]
    sqf = squarefree_part(events)
    exact = sqf.degree
    counts = {label: 0 for label in LABELS[degree]}
    with mpmath.workdps(WORK_DPS):
        roots = _numeric_roots(sqf)
        numeric = _distinct_count(roots)
        if numeric != exact:
            raise Ambiguous(f"{numeric} numeric events but {exact} exact")
        lead_zero = 0
        for z in roots:
            label = classify_point(P, z, tol)
            if label == OPEN_STRATUM[degree]:
                raise Ambiguous("event point classified into the open stratum")
            counts[label] += 1
            lead_zero += label in LEADING_ZERO[degree]
        exact_lead = distinct_roots_cstar(poly_gcd(sqf, P[0]))
        if lead_zero != exact_lead:
            raise Ambiguous(f"{lead_zero} points with p_0 = 0 but {exact_lead} exact")
    return Classification(counts, exact, numeric)


def observed_chi(counts: dict[str, int], degree: int) -> dict[str, int]:
    chi = dict(counts)
    open_label = OPEN_STRATUM[degree]
    chi[open_label] = -sum(v for k, v in counts.items() if k != open_label)
    assert sum(chi.values()) == 0
    return chi


# --- verification driver ------------------------------------------------------------


@dataclass
class TrialRecord:
    index: int
    seed: int
    attempts: int
    stratum_counts: dict[str, int] | None
    chi_observed: dict[str, int] | None
    verdict: str  # "match" | "mismatch" | "ambiguous"
    note: str = ""

    def to_json_obj(self, chi_predicted: dict[str, int]) -> dict:
        return {"index": self.index, "seed": self.seed, "attempts": self.attempts,
                "stratum_counts": self.stratum_counts,
                "chi_predicted": chi_predicted,
                "chi_observed": self.chi_observed,
                "verdict": self.verdict, "note": self.note}


@dataclass
class OracleReport:
    degree: int
    segments: list[Polytope]
    chi_predicted: dict[str, int]
    tol: float
    coeff_bound: int
    seed: int
    normalization_shift: int
    per_trial: list[TrialRecord] = field(default_factory=list)

    @property
    def trials(self) -> int:
        return len(self.per_trial)

    @property
    def retries(self) -> int:
        return sum(t.attempts - 1 for t in self.per_trial)

    def count(self, verdict: str) -> int:
        return sum(t.verdict == verdict for t in self.per_trial)

    @property
    def first_draw_matches(self) -> int:
        return sum(t.verdict == "match" and t.attempts == 1 for t in self.per_trial)

    @property
    def ok(self) -> bool:
        return self.count("mismatch") == 0 and self.count("ambiguous") == 0

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "segments": [s.to_json_obj() for s in self.segments],
            "chi": self.chi_predicted,
            "tol": self.tol,
            "coeff_bound": self.coeff_bound,
            "seed": self.seed,
            "normalization_shift": self.normalization_shift,
            "trials": self.trials,
            "retries": self.retries,
            "summary": {"match": self.count("match"),
                        "mismatch": self.count("mismatch"),
                        "ambiguous": self.count("ambiguous"),
                        "first_draw_match": self.first_draw_matches},
            "per_trial": [t.to_json_obj(self.chi_predicted) for t in self.per_trial],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def trial_seed(seed: int, index: int, attempt: int) -> int:
    """Independent 64-bit stream seed for one (trial, attempt) pair."""
    ss = np.random.SeedSequence([seed, index, attempt])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def segment(a: int, b: int) -> Polytope:
    return convex_hull([(a,), (b,)])


def verify_1d(segments: Sequence[Polytope], degree: int, trials: int = 50,
              seed: int = 0, tol: float = 1e-8, coeff_bound: int = 50,
              retry_cap: int = 5) -> OracleReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    segments = list(segments)
    if len(segments) != degree + 1:
        raise ValueError(f"degree {degree} needs {degree + 1} segments")
    if any(s.ambient_dim != 1 for s in segments):
        raise ValueError("oracle segments must live in R^1")
    predicted = (chi_deg2(*segments) if degree == 2 else chi_deg3(*segments)).as_ints()
    shift = -min(int(v[0]) for s in segments for v in s.vertices)
    report = OracleReport(degree, segments, predicted, tol, coeff_bound, seed, shift)
    for index in range(trials):
        record = None
        for attempt in range(retry_cap + 1):
            s = trial_seed(seed, index, attempt)
            polys = random_generic(GenericSystemSpec(tuple(segments), coeff_bound, s))
            P, _ = normalize_laurent(polys)
            try:
                cls = classify_strata_1d(P, degree, tol)
            except Ambiguous as exc:
                record = TrialRecord(index, s, attempt + 1, None, None, "ambiguous", str(exc))
                continue
            chi = observed_chi(cls.counts, degree)
            verdict = "match" if chi == predicted else "mismatch"
            record = TrialRecord(index, s, attempt + 1, cls.counts, chi, verdict)
            break
        report.per_trial.append(record)
    return report
