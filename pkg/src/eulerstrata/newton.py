"""Laurent polynomials, Newton polytopes and the lifted constructions.

Lifted polytopes live in R^{n+1} (extra coordinate ``k_t``) or R^{n+2}
(``k_t`` then ``k_sigma``). A coefficient ``p_i`` of a degree-``k``
polynomial in ``t`` multiplies ``t^(k-i)``, so its Newton polytope is lifted
to height ``k - i``.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .polytope import GeometryError, Polytope, as_rational, convex_hull, minkowski_sum, scale

MAX_EXPONENT = 10**6

Exponent = tuple[int, ...]


class ParseError(ValueError):
    """Syntax error in a Laurent polynomial, with the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class LaurentPolynomial:
    num_vars: int
    terms: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("num_vars must be positive")
        clean = {}
        for exp, c in self.terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.num_vars:
                raise ValueError("exponent length does not match num_vars")
            c = as_rational(c)
            if c:
                clean[exp] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Exponent]:
        return list(self.terms)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.num_vars, out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for (e1, c1), (e2, c2) in itertools.product(self.terms.items(), other.terms.items()):
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.num_vars, out)

    def _check(self, other):
        if not isinstance(other, LaurentPolynomial) or other.num_vars != self.num_vars:
            raise ValueError("polynomials must share the number of variables")

    def to_json_obj(self) -> dict:
        return {"vars": self.num_vars,
                "terms": [{"coeff": _frac_str(c), "exp": list(e)}
                          for e, c in self.terms.items()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPolynomial":
        try:
            n = obj["vars"]
            terms: dict[Exponent, Fraction] = {}
            for t in obj["terms"]:
                e = tuple(t["exp"])
                if any(not isinstance(x, int) or isinstance(x, bool) for x in e):
                    raise ValueError("exponents must be integers")
                terms[e] = terms.get(e, 0) + as_rational(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        return cls(n, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = default_names(self.num_vars)
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"{names[i]}^{k}" if k != 1 else names[i]
                            for i, k in enumerate(e) if k)
            coeff = _frac_str(abs(c))
            body = mono if mono and coeff == "1" else (
                f"{coeff}*{mono}" if mono else coeff)
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def default_names(num_vars: int, base_vars: int | None = None) -> list[str]:
    """``z1..zn`` followed by ``t`` and ``s`` for the lifted variables."""
    n = num_vars if base_vars is None else base_vars
    extra = num_vars - n
    if extra < 0 or extra > 2:
        raise ValueError("base_vars must leave at most two lifted variables")
    return [f"z{i + 1}" for i in range(n)] + ["t", "s"][:extra]


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_laurent(text: str, num_vars: int, base_vars: int | None = None) -> LaurentPolynomial:
    """Parse e.g. ``"3*z1^2*z2^-1 - z2"`` into a LaurentPolynomial.

    Variables are ``z1..zn``; when ``base_vars`` is below ``num_vars`` the
    next two variables are written ``t`` and ``s``. Repeated monomials are
    summed and cancelled terms dropped.
    """
    names = {name: i for i, name in enumerate(default_names(num_vars, base_vars))}
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def integer() -> int:
        kind, val, pos = take()
        if kind != "num":
            raise ParseError("expected an integer", pos)
        return int(val)

    terms: dict[Exponent, Fraction] = {}
    sign = 1
    kind, val, pos = peek()
    if kind == "op" and val in "+-":
        take()
        sign = -1 if val == "-" else 1
    while True:
        coeff = Fraction(sign)
        exp = [0] * num_vars
        while True:
            kind, val, pos = take()
            if kind == "num":
                num = int(val)
                if peek()[0] == "op" and peek()[1] == "/":
                    take()
                    den_pos = peek()[2]
                    den = integer()
                    if den == 0:
                        raise ParseError("zero denominator", den_pos)
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
            elif kind == "var":
                if val not in names:
                    raise ParseError(f"unknown variable {val!r}", pos)
                power = 1
                if peek()[0] == "op" and peek()[1] == "^":
                    take()
                    psign = 1
                    if peek()[0] == "op" and peek()[1] in "+-":
                        psign = -1 if take()[1] == "-" else 1
                    exp_pos = peek()[2]
                    power = psign * integer()
                    if abs(power) > MAX_EXPONENT:
                        raise ParseError("exponent overflow", exp_pos)
                exp[names[val]] += power
                if abs(exp[names[val]]) > MAX_EXPONENT:
                    raise ParseError("exponent overflow", pos)
            else:
                raise ParseError("expected a number or variable", pos)
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                continue
            break
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff
        kind, val, pos = take()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            continue
        raise ParseError(f"unexpected token {val!r}", pos)
    return LaurentPolynomial(num_vars, terms)


def newton_polytope(p: LaurentPolynomial) -> Polytope:
    if p.is_zero():
        raise GeometryError("zero polynomial has no Newton polytope")
    return convex_hull(p.support())


def delta_star(d0: Polytope, d1: Polytope, d2: Polytope) -> Polytope:
    """Hull of ``d1`` together with the half-sum ``(d0 + d2) / 2``."""
    if not d0.ambient_dim == d1.ambient_dim == d2.ambient_dim:
        raise GeometryError("dimension mismatch")
    half = scale(minkowski_sum(d0, d2), Fraction(1, 2))
    return convex_hull(d1.vertices + half.vertices)


def lift_shift(a: Polytope, extra_coords: Sequence[int]) -> Polytope:
    tail = tuple(Fraction(c) for c in extra_coords)
    if not tail:
        return a
    return Polytope._from_vertices(p + tail for p in a.vertices)


def big_delta(k: int, deltas: Sequence[Polytope]) -> Polytope:
    """Newton polytope of ``sum p_i t^(k-i)`` in R^{n+1}."""
    deltas = list(deltas)
    if len(deltas) != k + 1:
        raise GeometryError(f"expected {k + 1} polytopes, got {len(deltas)}")
    if len({d.ambient_dim for d in deltas}) != 1:
        raise GeometryError("dimension mismatch")
    pts = []
    for i, d in enumerate(deltas):
        pts.extend(lift_shift(d, [k - i]).vertices)
    return convex_hull(pts)


def delta_123(d1: Polytope, d2: Polytope, d3: Polytope) -> Polytope:
    return big_delta(2, [d1, d2, d3])


def ddd(i: int, delta: Polytope) -> Polytope:
    """Newton polytope of ``s + p_i t^(3-i)`` in R^{n+2}."""
    if i not in (0, 1, 2, 3):
        raise GeometryError("index must be in 0..3")
    n = delta.ambient_dim
    apex = (Fraction(0),) * (n + 1) + (Fraction(1),)
    return convex_hull((apex,) + lift_shift(delta, [3 - i, 0]).vertices)


def lattice_points(a: Polytope) -> list[Exponent]:
    """Integer points of ``a`` by bounding-box scan with exact membership."""
    verts = a.vertices
    lo = [math.ceil(min(v[c] for v in verts)) for c in range(a.ambient_dim)]
    hi = [math.floor(max(v[c] for v in verts)) for c in range(a.ambient_dim)]
    return [p for p in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))
            if a.contains(p)]


@dataclass(frozen=True)
class GenericSystemSpec:
    polytopes: tuple[Polytope, ...]
    coeff_bound: int = 50
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        if not self.polytopes:
            raise ValueError("need at least one polytope")
        if len({p.ambient_dim for p in self.polytopes}) != 1:
            raise GeometryError("dimension mismatch")
        for p in self.polytopes:
            if any(c.denominator != 1 for v in p.vertices for c in v):
                raise GeometryError("generic polynomials need integer vertices")
        if self.coeff_bound < 2:
            raise ValueError("coeff_bound must be at least 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def random_generic(spec: GenericSystemSpec) -> list[LaurentPolynomial]:
    """One polynomial per polytope, supported on all its lattice points.

    Coefficients are uniform on ``[-R, R] \\ {0}``; draws are reproducible
    from ``spec.seed``.
    """
    rng = random.Random(spec.seed)
    R = spec.coeff_bound
    out = []
    for poly in spec.polytopes:
        terms = {}
        for e in lattice_points(poly):
            c = rng.randint(1, 2 * R)
            terms[e] = Fraction(c - R - 1 if c <= R else c - R)
        out.append(LaurentPolynomial(poly.ambient_dim, terms))
    return out
