"""Exact Reeb orbit spectra: Conley-Zehnder indices, ellipsoid spectra,
jump sequences, torus translations and rotation hits."""

from .errors import (
    ActionTie,
    DivisionByZero,
    DomainError,
    FieldMismatch,
    KindError,
    KotschickAnomaly,
    NotFound,
    PrecisionExhausted,
    RationalInput,
    ReebError,
    SubsequenceViolation,
)
from .exactreal import (
    Constant,
    ContinuedFraction,
    LinComb,
    QuadExt,
    constant,
    continued_fraction,
    convergents,
    lincomb_floor,
    parse_scalar,
    quad_arith,
    quad_compare,
    quad_floor,
    register_constant,
)
from .jumps import (
    AffineRelation,
    DefectReport,
    JumpSequence,
    KotschickCheck,
    SubsequenceCheck,
    find_affine_relation,
    find_common_jump,
    is_jump,
    is_jump_subsequence,
    jump_index_map,
    jump_sequence,
    kotschick_factor,
    quasimorphism_defect,
)
from .orbit import (
    ConvexityCheck,
    Elliptic,
    EvenHyperbolic,
    IteratedOrbit,
    OddHyperbolic,
    SimpleOrbit,
    Superadditivity,
    check_superadditivity,
    cz_index,
    degree,
    is_dynamically_convex,
    is_good,
    mean_index,
)
from .spectrum import (
    ClassificationResult,
    EllipsoidParams,
    OrderCheck,
    Realization,
    Spectrum,
    Verdict,
    check_condition_O,
    classify,
    degree_gap_structure,
    ellipsoid_spectrum,
    enumerate_iterates,
    find_degree_collision,
    hc_ranks,
    realize_from_ratio,
    sort_by_action,
)
from .torus import (
    ClosureDescription,
    DensityReport,
    RotationHit,
    TorusTranslation,
    character_lattice,
    circle_distance,
    closure_description,
    density_check,
    orbit_points,
    rational_span_dim,
    relation_lattice,
    rotation_hit,
    satisfies_relations,
)

__version__ = "0.1.0"

__all__ = [
    "ActionTie",
    "DivisionByZero",
    "DomainError",
    "FieldMismatch",
    "KindError",
    "KotschickAnomaly",
    "NotFound",
    "PrecisionExhausted",
    "RationalInput",
    "ReebError",
    "SubsequenceViolation",
    "Constant",
    "ContinuedFraction",
    "LinComb",
    "QuadExt",
    "constant",
    "continued_fraction",
    "convergents",
    "lincomb_floor",
    "parse_scalar",
    "quad_arith",
    "quad_compare",
    "quad_floor",
    "register_constant",
    "AffineRelation",
    "DefectReport",
    "JumpSequence",
    "KotschickCheck",
    "SubsequenceCheck",
    "find_affine_relation",
    "find_common_jump",
    "is_jump",
    "is_jump_subsequence",
    "jump_index_map",
    "jump_sequence",
    "kotschick_factor",
    "quasimorphism_defect",
    "ConvexityCheck",
    "Elliptic",
    "EvenHyperbolic",
    "IteratedOrbit",
    "OddHyperbolic",
    "SimpleOrbit",
    "Superadditivity",
    "check_superadditivity",
    "cz_index",
    "degree",
    "is_dynamically_convex",
    "is_good",
    "mean_index",
    "ClassificationResult",
    "EllipsoidParams",
    "OrderCheck",
    "Realization",
    "Spectrum",
    "Verdict",
    "check_condition_O",
    "classify",
    "degree_gap_structure",
    "ellipsoid_spectrum",
    "enumerate_iterates",
    "find_degree_collision",
    "hc_ranks",
    "realize_from_ratio",
    "sort_by_action",
    "ClosureDescription",
    "DensityReport",
    "RotationHit",
    "TorusTranslation",
    "character_lattice",
    "circle_distance",
    "closure_description",
    "density_check",
    "orbit_points",
    "rational_span_dim",
    "relation_lattice",
    "rotation_hit",
    "satisfies_relations",
]
