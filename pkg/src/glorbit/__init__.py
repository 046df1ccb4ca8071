"""Exact classification of GL(n,Z)-orbits of points and rational affine subspaces."""

from .affine_orbits import (
    SubspaceInvariant,
    d_from_v,
    equivalent_subspaces,
    filetto_point,
    gamma_from_regular_simplexes,
    scale_subspace,
    subspace_invariant,
    v_f,
    witness_subspace,
)
from .errors import OrbitError
from .measure import lambda_complex, lambda_parallelotope, lambda_segment, qnorm
from .point_orbits import (
    PointInvariant,
    approx_orbit,
    approx_orbit_certified,
    equivalent_points,
    h_invariant,
    is_dense,
    witness_point,
)
from .ratgeom import (
    RationalAffineSubspace,
    RationalSimplex,
    SimplicialComplex,
    d_min,
    make_subspace,
    regular_simplex_in,
)
from .symbolic import SymbolicBasis, SymbolicPoint
from .zlinalg import UnimodularMap

__version__ = "0.1.0"
