"""Two-agent claims rules extended with exclusion thresholds by dilation."""

from .core import (
    DEFAULT_TOL,
    TRIVIAL,
    Allocation,
    ClaimsError,
    ClaimsProblem,
    ExclusionThresholds,
    ExtendedProblem,
    ToleranceConfig,
    ValidationError,
    is_order_preserving,
    is_symmetric,
)
from .dilation import DilationSpec, dilate_scalar, dilated_allocation, dilated_rule_path
from .operator import (
    CLOSED_FORMS,
    ExtendedRule,
    apply_operator,
    closed_form_cd,
    closed_form_cea,
    closed_form_cel,
    closed_form_rt,
    closed_form_terms,
    closed_form_v,
    extend,
    extended_breakpoints,
    extended_sd,
    extended_trace,
    operator_trace,
)
from .rules import CLASSIC, RULES, Rule, allocate_from_path, get_rule

__version__ = "0.1.0"
