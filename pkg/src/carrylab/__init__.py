"""Exact carry statistics for digital sets, with exhaustive verification tools."""

from .bounds import BoundSpec, alon_bound, interval_carry_count, mu, mu_table, thm22_threshold, thm23_threshold
from .carry import (
    CarryReport,
    SumsetProfile,
    carry_of,
    carry_report,
    digit_of,
    layered_size,
    pollard_sum,
    rep_function,
)
from .extremal import (
    EnumerationPlan,
    Exhaustive,
    HillClimb,
    Random,
    StructureClass,
    VerificationReport,
    classify_structure,
    enumerate_sets,
    min_c1,
    min_c2,
    verify_theorem,
)
from .pollard import (
    TightnessClassification,
    classify_tightness,
    has_chowla,
    is_ap,
    pollard_bound,
    pollard_check,
    triangular_psi,
)
from .ring import (
    DigitalSet,
    Domain,
    PrimePowerDecomposition,
    canonical_form,
    decompose,
    dilate,
    factor,
    is_admissible,
    parse_set_literal,
    project,
    translate,
    validate_digital_set,
)

__version__ = "0.1.0"
