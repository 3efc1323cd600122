"""Exact finite-scale simplicial volume toolkit.

Δ-complexes, exact rational ℓ¹ class norms by linear programming, signed
measure chains, cyclic covers with transfer, barycentric subdivision,
wrapped edge-paths and deck-group smearing.
"""

from svlab.delta_complex import (
    ComplexReport,
    DeltaComplex,
    boundary_matrix,
    build_circle,
    build_polygon_surface,
    build_torus,
    fundamental_cycle,
    validate,
)
from svlab.chains import (
    RationalChain,
    RationalCochain,
    SimplicialMap,
    boundary,
    coboundary,
    homology_class_decompose,
    kronecker,
    l1_norm,
    push_chain,
    sup_norm,
)
from svlab.errors import SvlabError

__version__ = "0.1.0"

__all__ = [
    "ComplexReport",
    "DeltaComplex",
    "RationalChain",
    "RationalCochain",
    "SimplicialMap",
    "SvlabError",
    "boundary",
    "boundary_matrix",
    "build_circle",
    "build_polygon_surface",
    "build_torus",
    "coboundary",
    "fundamental_cycle",
    "homology_class_decompose",
    "kronecker",
    "l1_norm",
    "push_chain",
    "sup_norm",
    "validate",
]
