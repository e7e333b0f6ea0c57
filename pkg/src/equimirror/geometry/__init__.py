"""Integer linear algebra, lattice polytopes, cones and point counting."""

from .cones import (
    AbstractCone,
    ConeComplex,
    Face,
    abstract_dual_face,
    abstract_primal,
    abstract_quotient,
    build_cone,
)
from .intlinalg import IntMatrix, char_poly, char_series, det, integer_kernel
from .polytope import LatticePolytope

__all__ = [
    "AbstractCone",
    "ConeComplex",
    "Face",
    "IntMatrix",
    "LatticePolytope",
    "abstract_dual_face",
    "abstract_primal",
    "abstract_quotient",
    "build_cone",
    "char_poly",
    "char_series",
    "det",
    "integer_kernel",
]
