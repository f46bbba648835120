"""Exact polytope kernel: hulls, dual representations, polarity, faces."""
from .core import (
    Cone,
    Facet,
    HRepresentation,
    Polytope,
    block_equalities,
    chamber_extreme,
    contains,
    contains_h,
    face,
    gauge,
    h_representation,
    hull,
    minkowski_sum,
    normal_cone,
    permutations_of,
    polar,
    project_to_blocks,
    projection,
    section,
    support,
    weyl_hull,
)
from .exact import as_fraction, as_rvec, fmt, snap_to_grid
from .lp import LPResult, linprog_exact

__all__ = [
    "Cone",
    "Facet",
    "HRepresentation",
    "LPResult",
    "Polytope",
    "as_fraction",
    "as_rvec",
    "block_equalities",
    "chamber_extreme",
    "contains",
    "contains_h",
    "face",
    "fmt",
    "gauge",
    "h_representation",
    "hull",
    "linprog_exact",
    "minkowski_sum",
    "normal_cone",
    "permutations_of",
    "polar",
    "project_to_blocks",
    "projection",
    "section",
    "snap_to_grid",
    "support",
    "weyl_hull",
]
