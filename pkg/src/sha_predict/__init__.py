"""Predicted Shafarevich-Tate groups of CM elliptic curves from class groups
of quadratic orders, with the supporting number theory."""

__version__ = "0.1.0"

from .abelian import AbelianGroupStructure
from .arith import ContinuedFraction, QuadIrrational, cf_expand, fundamental_pell, quad
from .orders import QuadOrder, class_number_order, conductor_search
from .qforms import BinaryQuadraticForm, class_group_definite, class_numbers_indefinite
from .sha import ShaPrediction, sha_cm_curve, sha_from_class_group

__all__ = [
    "AbelianGroupStructure",
    "BinaryQuadraticForm",
    "ContinuedFraction",
    "QuadIrrational",
    "QuadOrder",
    "ShaPrediction",
    "cf_expand",
    "class_group_definite",
    "class_number_order",
    "class_numbers_indefinite",
    "conductor_search",
    "fundamental_pell",
    "quad",
    "sha_cm_curve",
    "sha_from_class_group",
]
