"""Numerical convex geometry in R^3.

Support functions, surface-area and cone-volume measures, mixed quermass
vectors, Bonnesen classification of body pairs, and Wulff-shape construction
of logarithmic and p-mean combinations, with margin-reporting checks of the
associated inequalities.
"""
from .bodies import (
    Ball,
    Box,
    ConvexBody,
    Cylinder,
    Dilate,
    Polytope,
    RevolutionBody,
    TrigPolynomial,
    outer_parallel_support,
    rho_extremes,
    support,
    support_witness,
)
from .bonnesen import BonnesenReport, bonnesen_eval, classify, report_from_quermass
from .constant_width import (
    blaschke_volume,
    make_profile,
    profile_ratio_extremes,
    reproduce_prop41,
    revolution_body,
    surface_area_revolution,
)
from .errors import (
    DegenerateBody,
    DegenerateHull,
    GeometryError,
    InvalidExponent,
    InvalidInput,
    InvalidParameter,
    NonPositiveFunction,
    ResolutionOutOfRange,
)
from .inequalities import (
    InequalityReport,
    check_af,
    check_lemma31,
    check_log_bm,
    check_log_minkowski,
    check_lp,
    f_curve,
    reports_to_csv,
    reports_to_json_lines,
    suite,
)
from .measures import (
    QuermassVector,
    cone_volume_integral,
    lemma31_integral,
    mixed_area_integral,
    minkowski_sum,
    quermass,
    quermass_of_sum,
    steiner_eval,
    steiner_volume,
    surface_area_measure,
    volume,
)
from .wulff import (
    DirectionGrid,
    WulffResult,
    augment_with_facet_normals,
    geodesic_grid,
    log_combination,
    lp_combination,
    wulff_shape,
)

__version__ = "0.1.0"

__all__ = [
    "Ball", "Box", "ConvexBody", "Cylinder", "Dilate", "Polytope",
    "RevolutionBody", "TrigPolynomial", "outer_parallel_support",
    "rho_extremes", "support", "support_witness",
    "BonnesenReport", "bonnesen_eval", "classify", "report_from_quermass",
    "blaschke_volume", "make_profile", "profile_ratio_extremes",
    "reproduce_prop41", "revolution_body", "surface_area_revolution",
    "GeometryError", "DegenerateBody", "DegenerateHull", "InvalidExponent",
    "InvalidInput", "InvalidParameter", "NonPositiveFunction",
    "ResolutionOutOfRange",
    "InequalityReport", "check_af", "check_lemma31", "check_log_bm",
    "check_log_minkowski", "check_lp", "f_curve", "reports_to_csv",
    "reports_to_json_lines", "suite",
    "QuermassVector", "cone_volume_integral", "lemma31_integral",
    "mixed_area_integral", "minkowski_sum", "quermass", "quermass_of_sum",
    "steiner_eval", "steiner_volume", "surface_area_measure", "volume",
    "DirectionGrid", "WulffResult", "augment_with_facet_normals",
    "geodesic_grid", "log_combination", "lp_combination", "wulff_shape",
    "__version__",
]
