"""Exact split-octonion engine: composition algebra, cl(4,2) spinors,
positive-energy u(2,2) ladder representations, conformal geometry and
two-point analytics."""

from .scalars import (
    DivisionByZero,
    ExactScalar,
    HALF,
    I,
    INV_SQRT2,
    ONE,
    SQRT2,
    ZERO,
    ZETA,
)
from .composition import (
    SplitOctonion,
    UnitIndex,
    composition_suite,
    multiplication_table,
    table_csv,
    table_text,
    verify_moufang,
)
from .clifford import (
    SpinorMatrix,
    chiral_transform,
    clifford_relations_check,
    distinguished_elements,
    gamma4,
    pseudoscalar,
    so42_commutator_check,
    trace_identity_suite,
)
from .oscillator import (
    FockBasisState,
    FockOperator,
    FockVector,
    HeadroomError,
    Truncation,
    casimirs,
    sector_suite,
    so4_decompose,
    zero_mode_suite,
)
from .geometry import (
    ConformalPoint,
    LightconeSingularity,
    box6_commutator_check,
    ds_twopoint,
    eds_embed,
    gegenbauer_H,
    geometry_suite,
    sixd_twopoint,
    tube_membership,
)
from .vertex import (
    DomainWarning,
    VertexSeriesConfig,
    bergman_norm_check,
    matrix_element_gegenbauer,
    twopoint_series,
    vertex_state,
    vertex_suite,
)
from .reporting import Check, Report, run_check

__version__ = "0.1.0"

__all__ = [
    "DivisionByZero",
    "ExactScalar",
    "ZERO",
    "ONE",
    "ZETA",
    "I",
    "SQRT2",
    "HALF",
    "INV_SQRT2",
    "SplitOctonion",
    "UnitIndex",
    "multiplication_table",
    "table_text",
    "table_csv",
    "verify_moufang",
    "composition_suite",
    "SpinorMatrix",
    "pseudoscalar",
    "distinguished_elements",
    "chiral_transform",
    "gamma4",
    "clifford_relations_check",
    "so42_commutator_check",
    "trace_identity_suite",
    "FockBasisState",
    "FockVector",
    "FockOperator",
    "Truncation",
    "HeadroomError",
    "casimirs",
    "so4_decompose",
    "sector_suite",
    "zero_mode_suite",
    "ConformalPoint",
    "LightconeSingularity",
    "tube_membership",
    "eds_embed",
    "ds_twopoint",
    "sixd_twopoint",
    "gegenbauer_H",
    "box6_commutator_check",
    "geometry_suite",
    "DomainWarning",
    "VertexSeriesConfig",
    "vertex_state",
    "matrix_element_gegenbauer",
    "twopoint_series",
    "bergman_norm_check",
    "vertex_suite",
    "Check",
    "Report",
    "run_check",
    "__version__",
]
