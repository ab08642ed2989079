"""Uniform approximation of sphere-valued analytic functions in the chordal metric."""

__version__ = "0.1.0"

from .annulus import (
    approximate_laurent,
    chordal_sum_combine,
    laurent_decompose,
    validate_polynomial_target,
)
from .circle import (
    CircleSamples,
    approximate_on_circle,
    chordal_clip,
    sample_circle,
    trig_approx,
)
from .counterexamples import (
    area_mean_iterated,
    boundary_pole_function,
    inner_circle_mean,
    mean_value_pv,
    re_identity_max_deviation,
    sup_bound_counterexample,
)
from .disc import (
    ApproxResult,
    approximate_on_disc,
    approximate_poly,
    approximate_single_pole,
    cauchy_regular_part,
    dilation_radius,
    infinity_approximant,
    infinity_level,
)
from .errors import (
    AllSamplesExceedError,
    ApproximationError,
    ChordalApproxError,
    DegreeCapError,
    DilationSearchError,
    MembershipError,
    PoleSampleError,
    ValidationError,
)
from .funcspec import (
    Arc,
    Circle,
    ClosedAnnulus,
    ClosedDisc,
    ConstantInfinity,
    DisjointUnion,
    LaurentPoly,
    MembershipReport,
    PartialFractions,
    PoleRational,
    PoleTerm,
    Polynomial,
    StarlikeCompact,
    Sum,
    classify_membership,
    dilate,
    evaluate,
    evaluate_array,
    fft_laurent_coeffs,
    fft_taylor_coeffs,
    mobius_compose,
    poles_of,
    taylor_coeffs,
    to_partial_fractions,
)
from .special_domains import (
    approximate_on_arc,
    approximate_on_disjoint_union,
    approximate_on_starlike,
)
from .sphere import (
    INFINITY,
    ExtendedComplex,
    bounded_equivalence_factor,
    chordal_dist,
    exterior_threshold,
    reciprocal,
)
from .supmetric import GridSpec, SupEstimate, sup_chordal, verification_grid

__all__ = [
    "__version__",
    "ExtendedComplex",
    "INFINITY",
    "chordal_dist",
    "reciprocal",
    "bounded_equivalence_factor",
    "exterior_threshold",
    "Polynomial",
    "LaurentPoly",
    "PoleRational",
    "PoleTerm",
    "PartialFractions",
    "ConstantInfinity",
    "Sum",
    "ClosedDisc",
    "Circle",
    "ClosedAnnulus",
    "StarlikeCompact",
    "Arc",
    "DisjointUnion",
    "MembershipReport",
    "evaluate",
    "evaluate_array",
    "poles_of",
    "to_partial_fractions",
    "mobius_compose",
    "dilate",
    "taylor_coeffs",
    "fft_taylor_coeffs",
    "fft_laurent_coeffs",
    "classify_membership",
    "GridSpec",
    "SupEstimate",
    "sup_chordal",
    "verification_grid",
    "ApproxResult",
    "dilation_radius",
    "approximate_poly",
    "approximate_on_disc",
    "infinity_level",
    "infinity_approximant",
    "approximate_single_pole",
    "cauchy_regular_part",
    "CircleSamples",
    "sample_circle",
    "chordal_clip",
    "trig_approx",
    "approximate_on_circle",
    "laurent_decompose",
    "approximate_laurent",
    "chordal_sum_combine",
    "validate_polynomial_target",
    "approximate_on_starlike",
    "approximate_on_arc",
    "approximate_on_disjoint_union",
    "sup_bound_counterexample",
    "mean_value_pv",
    "re_identity_max_deviation",
    "area_mean_iterated",
    "inner_circle_mean",
    "boundary_pole_function",
    "ChordalApproxError",
    "ValidationError",
    "MembershipError",
    "ApproximationError",
    "DilationSearchError",
    "DegreeCapError",
    "PoleSampleError",
    "AllSamplesExceedError",
]
