"""Multigraded cohomology of partition quotients of moment-angle complexes.

Three independent routes compute the same groups: sums over restricted
subcomplexes, explicit cellular cochain complexes, and a finite DGA.
"""

from .cellular import build_real_cochain, build_torus_cochain, cup_cellular, split_multidegree, transport_phi
from .dga import (
    build_R,
    cohomology_ring,
    combinatorial_cup,
    multiply_R,
    tor_dimensions,
    transport_psi,
    truncated_koszul,
)
from .errors import InvariantError, ValidationError
from .hochster import hochster_real, hochster_spheres, hochster_torus, stable_wedge_summands
from .homology import Group, Ring, build_reduced_cochain, cohomology, smith_normal_form
from .simplicial import (
    ColoredComplex,
    boundary_sign,
    color_support,
    complex_from_facets,
    is_nondegenerate,
    join_meet,
    kappa,
    restricted_subcomplex,
)
from .stretch import prism_triangulation, stretch, validate_poset

__all__ = [
    "ColoredComplex",
    "Group",
    "InvariantError",
    "Ring",
    "ValidationError",
    "boundary_sign",
    "build_R",
    "build_real_cochain",
    "build_reduced_cochain",
    "build_torus_cochain",
    "cohomology",
    "cohomology_ring",
    "color_support",
    "combinatorial_cup",
    "complex_from_facets",
    "cup_cellular",
    "hochster_real",
    "hochster_spheres",
    "hochster_torus",
    "is_nondegenerate",
    "join_meet",
    "kappa",
    "multiply_R",
    "prism_triangulation",
    "restricted_subcomplex",
    "smith_normal_form",
    "split_multidegree",
    "stable_wedge_summands",
    "stretch",
    "tor_dimensions",
    "transport_phi",
    "transport_psi",
    "truncated_koszul",
    "validate_poset",
]
