"""Exact census of triangle areas in planar line arrangements.

Lines live in projective coordinates over the rationals or over real
quadratic extension towers; every geometric predicate is decided exactly.
The package constructs the extremal families (offset grids, the pentagon
chain, the incidence-driven unit-area family), counts triangles by area,
and verifies the combinatorial bounds these constructions are built to
meet.
"""

from .arrangement import (
    AffineMap,
    Arrangement,
    ArrangementError,
    ArrangementParseError,
    CONCURRENT,
    FrameParam,
    HAS_PARALLEL_PAIR,
    InvalidLineError,
    Line,
    PROPER,
    Point,
    ReferenceFrame,
    canonical_tuple,
    choose_reference_frame,
    frame_params,
    frame_scale,
    horizontal_map,
    intersect,
    triple_area,
    triple_area_frame,
)
from .bounds import (
    BoundsReport,
    CheckResult,
    FormulaBounds,
    GellGraph,
    build_gell_graphs,
    find_cycle,
    formula_bounds,
    hexgrid_facial_formula,
    kobon_bound,
    trigrid_facial_formula,
    verify_arrangement,
)
from .census import (
    AreaCensus,
    UNIT_AREA,
    census,
    facial_triangle_count,
    facial_triangles,
    frame_identity_sum,
    per_line_counts,
    select_backend,
    triples_with_area,
    unit_count_by_frame_identity,
)
from .chain import ChainError, combine, max_chain, pentagon_max_area
from .conics import (
    DualConic,
    GeneralPositionReport,
    UNIT_CIRCLE_DUAL,
    equal_area_conic,
    five_tangent_conic,
    six_tangent_test,
    tangent,
    triangle_quadrant,
    validate_general_position,
)
from .constructions import (
    hexgrid,
    param_line,
    pentagon,
    random_arrangement,
    random_general_position,
    scale,
    scale_to_unit_min,
    st_extremal,
    trigrid,
)
from .distinct import (
    ColoredTripleSystem,
    DEGENERATE,
    dedupe_slopes,
    extract_rainbow,
    is_rainbow,
)
from .duality import (
    DualLine,
    LiftedPoint,
    incidence_count,
    lift,
    reference_params,
    unit_count_on_line_by_incidence,
    unit_incidence_pairs,
)
from .scalars import (
    CertifiedInterval,
    QuadExt,
    Scalar,
    ScalarSyntaxError,
    exact_sign,
    format_scalar,
    interval_of,
    parse_scalar,
    scalar_floor,
    sqrt_exact,
)

__version__ = "1.0.0"

__all__ = [
    "AffineMap",
    "AreaCensus",
    "Arrangement",
    "ArrangementError",
    "ArrangementParseError",
    "BoundsReport",
    "CONCURRENT",
    "CertifiedInterval",
    "ChainError",
    "CheckResult",
    "ColoredTripleSystem",
    "DEGENERATE",
    "DualConic",
    "DualLine",
    "FormulaBounds",
    "FrameParam",
    "GellGraph",
    "GeneralPositionReport",
    "HAS_PARALLEL_PAIR",
    "InvalidLineError",
    "LiftedPoint",
    "Line",
    "PROPER",
    "Point",
    "QuadExt",
    "ReferenceFrame",
    "Scalar",
    "ScalarSyntaxError",
    "UNIT_AREA",
    "UNIT_CIRCLE_DUAL",
    "build_gell_graphs",
    "canonical_tuple",
    "census",
    "choose_reference_frame",
    "combine",
    "dedupe_slopes",
    "equal_area_conic",
    "exact_sign",
    "extract_rainbow",
    "facial_triangle_count",
    "facial_triangles",
    "find_cycle",
    "five_tangent_conic",
    "formula_bounds",
    "format_scalar",
    "frame_identity_sum",
    "frame_params",
    "frame_scale",
    "hexgrid",
    "hexgrid_facial_formula",
    "horizontal_map",
    "incidence_count",
    "intersect",
    "interval_of",
    "is_rainbow",
    "kobon_bound",
    "lift",
    "max_chain",
    "param_line",
    "parse_scalar",
    "pentagon",
    "pentagon_max_area",
    "per_line_counts",
    "random_arrangement",
    "random_general_position",
    "reference_params",
    "scalar_floor",
    "scale",
    "scale_to_unit_min",
    "select_backend",
    "six_tangent_test",
    "sqrt_exact",
    "st_extremal",
    "tangent",
    "triangle_quadrant",
    "trigrid",
    "trigrid_facial_formula",
    "triple_area",
    "triple_area_frame",
    "triples_with_area",
    "unit_count_by_frame_identity",
    "unit_count_on_line_by_incidence",
    "unit_incidence_pairs",
    "validate_general_position",
    "verify_arrangement",
]
