"""Exact tropical polytopes over max-plus semirings, lifts to Hahn series
cones, and the facet/half-space correspondence between them."""

from .core import (
    BOTTOM,
    LEX,
    RAT,
    Lex,
    ProjectivePoint,
    TropicalHalfSpace,
    halfspace,
    in_general_position,
    is_tropically_singular,
    optimal_permutation,
    point,
    sector_contains,
    tperm,
    tplus,
    ttimes,
)
from .errors import (
    BudgetExceeded,
    DegeneracyError,
    DimensionError,
    InternalInconsistency,
    PreconditionError,
    TheoremViolation,
    TropifacetError,
    ValidationError,
)
from .lift import (
    Facet,
    LiftedCone,
    canonical_lift,
    cofactor_normal,
    custom_lift,
    enumerate_facets,
    facet_characterization_check,
    tropicalize_facet,
)
from .perturbation import (
    PerturbationScheme,
    VerificationReport,
    check_perturbation_lemmas,
    check_pi2_apex,
    generate_gammas,
    perturb,
    project_halfspace,
    theorem_pipeline,
)
from .polytope import (
    IjCertificate,
    TropicalPolytope,
    canonical_representation,
    cell_dimension,
    contains,
    enumerate_pseudovertices,
    extreme_points,
    ij_pseudovertices,
    is_Ij_pseudovertex,
    is_pure,
    project_onto,
    type_of,
    witness_extreme_points,
)
from .series import Series, format_series, instantiate, monomial, parse_series, project_series

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "BudgetExceeded",
    "DegeneracyError",
    "DimensionError",
    "Facet",
    "IjCertificate",
    "InternalInconsistency",
    "LEX",
    "Lex",
    "LiftedCone",
    "PerturbationScheme",
    "PreconditionError",
    "ProjectivePoint",
    "RAT",
    "Series",
    "TheoremViolation",
    "TropicalHalfSpace",
    "TropicalPolytope",
    "TropifacetError",
    "ValidationError",
    "VerificationReport",
    "canonical_lift",
    "canonical_representation",
    "cell_dimension",
    "check_perturbation_lemmas",
    "check_pi2_apex",
    "cofactor_normal",
    "contains",
    "custom_lift",
    "enumerate_facets",
    "enumerate_pseudovertices",
    "extreme_points",
    "facet_characterization_check",
    "format_series",
    "generate_gammas",
    "halfspace",
    "ij_pseudovertices",
    "in_general_position",
    "instantiate",
    "is_Ij_pseudovertex",
    "is_pure",
    "is_tropically_singular",
    "monomial",
    "optimal_permutation",
    "parse_series",
    "perturb",
    "point",
    "project_halfspace",
    "project_onto",
    "project_series",
    "sector_contains",
    "theorem_pipeline",
    "tperm",
    "tplus",
    "tropicalize_facet",
    "ttimes",
    "type_of",
    "witness_extreme_points",
]
