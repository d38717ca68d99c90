"""Discrete convexity classes generated by unimodular systems, in exact
arithmetic."""

from .config import Budget, default_budget
from .dc_classes import (
    ClassMembership,
    UnimodularSystem,
    edge_directions_check_mnat,
    gpolymatroid_points,
    gpolymatroid_polytope,
    in_class,
    system_b4,
    system_mnat,
    system_twisted_mnat,
    transform,
    zonotope,
)
from .decompose import (
    DCP2Report,
    Decomposition,
    Split,
    integral_decompose,
    split_point,
    verify_dcp2,
)
from .errors import *  # noqa: F401,F403
from .exact_linalg import (
    IntMatrix,
    Subspace,
    columns_inside_subspace,
    determinant,
    extend_basis,
    is_totally_unimodular,
    is_unimodular,
    rank,
    solve_in_basis,
    span_of_columns,
    subspace_membership,
)
from .lattice_sets import (
    LatticeSet,
    is_lnat_convex,
    is_mnat_convex,
    minkowski_sum,
    no_hole_check,
    sum_no_hole_check,
    supports,
)
from .polytopes import (
    Face,
    Polytope,
    faces,
    hull,
    is_integer_polytope,
    lattice_points,
    max_step,
    minimal_face_containing,
    minkowski_sum_polytopes,
    relative_interior_point,
)

__version__ = "0.1.0"
