"""Maslov index for paths of invertible tripotents in Sym(C^n)."""

from .calculus import (
    LiftedPoint,
    check_formula_E,
    check_leray,
    connecting_path,
    jordan_decompose,
    kashiwara_index,
    mas_two_points,
    souriau_m,
    takagi_sqrt,
    triple_index,
)
from .errors import (
    AdmissibilityError,
    DimensionError,
    InputError,
    JBMaslovError,
    NumericalError,
    StructureError,
    UncertifiedError,
)
from .jordan import bergman, in_sigma, is_tripotent, jordan_inverse, quadratic, triple_product, validate_axioms
from .lagrangian import lagrangian_to_tripotent, pair_report, tripotent_to_lagrangian
from .maslov import (
    choose_admissible_subdivision,
    det_argument_change,
    eigenvalue_flow,
    k_count,
    maslov_index,
    winding_number_det,
)
from .paths import (
    FrameDiagonalPath,
    FrameRotationPath,
    SampledPath,
    TripotentPath,
    concatenate,
    constant_path,
    reverse,
)
from .spectral import mu, perturbation_budget, relative_spectrum, spectral_idempotent

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "bergman",
    "check_formula_E",
    "check_leray",
    "choose_admissible_subdivision",
    "concatenate",
    "connecting_path",
    "constant_path",
    "det_argument_change",
    "DimensionError",
    "eigenvalue_flow",
    "FrameDiagonalPath",
    "FrameRotationPath",
    "in_sigma",
    "InputError",
    "is_tripotent",
    "JBMaslovError",
    "jordan_decompose",
    "jordan_inverse",
    "k_count",
    "kashiwara_index",
    "lagrangian_to_tripotent",
    "LiftedPoint",
    "mas_two_points",
    "maslov_index",
    "mu",
    "NumericalError",
    "pair_report",
    "perturbation_budget",
    "quadratic",
    "relative_spectrum",
    "reverse",
    "SampledPath",
    "souriau_m",
    "spectral_idempotent",
    "StructureError",
    "takagi_sqrt",
    "triple_index",
    "triple_product",
    "tripotent_to_lagrangian",
    "TripotentPath",
    "UncertifiedError",
    "validate_axioms",
    "winding_number_det",
]
