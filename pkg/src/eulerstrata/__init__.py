"""Euler characteristics of root-coincidence strata via mixed volumes."""

from .newton import (
    GenericSystemSpec,
    LaurentPolynomial,
    big_delta,
    ddd,
    delta_123,
    delta_star,
    lift_shift,
    newton_polytope,
    parse_laurent,
    random_generic,
)
from .polytope import (
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
from .strata import (
    StrataChi,
    chi_deg2,
    chi_deg3,
    chi_L_reduced_a,
    chi_L_reduced_b,
    consistency_deg2,
    consistency_deg3,
    r_residual,
)

__version__ = "0.1.0"
