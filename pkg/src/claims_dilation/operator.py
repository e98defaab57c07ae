"""The exclusion dilation operator.

``apply_operator`` is the generic three-stage construction: the agent with a
positive lower exclusion is served first, the exclusion space is shared
along the dilated base path, and past the aggregate upper threshold the
agent with a unit upper exclusion is held at its claim.  The ``closed_form_*``
functions are the explicit per-rule formulas, kept as an independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .core import (
    DEFAULT_TOL,
    Allocation,
    ExtendedProblem,
    PathPreconditionViolated,
    ToleranceConfig,
    ZeroClaimOne,
    validate_extended,
)
from .dilation import dilated_allocation
from .rules import RULES, Rule

BELOW_L = "below_L"
EXCLUSION_SPACE = "exclusion_space"
ABOVE_U = "above_U"


@dataclass(frozen=True)
class OperatorStageTrace:
    stage: str
    exclusion_endowment: float | None = None
    inner_solution: tuple[float, float] | None = None


@dataclass(frozen=True)
class ClosedFormTerms:
    K1: float
    K2: float
    T: float | None = None


@dataclass(frozen=True)
class ExtendedRule:
    name: str
    allocate: Callable[[ExtendedProblem], Allocation] = field(repr=False)
    base: Rule | None = None
    mode: str = "generic"

    def __call__(self, ep: ExtendedProblem) -> Allocation:
        return self.allocate(ep)


def stage_of(ep: ExtendedProblem) -> str:
    if ep.E < ep.L:
        return BELOW_L
    if ep.E > ep.U:
        return ABOVE_U
    return EXCLUSION_SPACE


def _below_L(ep: ExtendedProblem) -> Allocation:
    t, L, E = ep.thresholds, ep.L, ep.E
    x1 = t.l1 * ep.c1 / L * E
    x2 = t.l2 * ep.c2 / L * E
    return Allocation(x1, x2)


def _above_U(ep: ExtendedProblem) -> Allocation:
    t, U, C, E = ep.thresholds, ep.U, ep.C, ep.E
    x1 = t.u1 * ep.c1 + (1 - t.u1) * ep.c1 / (C - U) * (E - U)
    x2 = t.u2 * ep.c2 + (1 - t.u2) * ep.c2 / (C - U) * (E - U)
    return Allocation(x1, x2)


def _three_stage(ep: ExtendedProblem, inner: Callable[[ExtendedProblem], tuple[float, float]]) -> Allocation:
    stage = stage_of(ep)
    # E < L is unreachable when L = 0 and E > U is unreachable when U = C,
    # so neither division by zero can happen here.
    if stage == BELOW_L:
        return _below_L(ep)
    if stage == ABOVE_U:
        return _above_U(ep)
    y1, y2 = inner(ep)
    t = ep.thresholds
    return Allocation(t.l1 * ep.c1 + y1, t.l2 * ep.c2 + y2)


def operator_trace(base: Rule, ep: ExtendedProblem, tol: ToleranceConfig = DEFAULT_TOL):
    """Apply the operator and report which stage produced the allocation."""
    validate_extended(ep)
    base.check_path_domain(ep.problem)
    stage = stage_of(ep)
    if stage != EXCLUSION_SPACE:
        x = _below_L(ep) if stage == BELOW_L else _above_U(ep)
        return x, OperatorStageTrace(stage)
    E_in = ep.E - ep.L
    y = dilated_allocation(base, ep.problem, ep.thresholds, E_in, tol)
    t = ep.thresholds
    x = Allocation(t.l1 * ep.c1 + y[0], t.l2 * ep.c2 + y[1])
    return x, OperatorStageTrace(stage, E_in, y)


def apply_operator(base: Rule, ep: ExtendedProblem, tol: ToleranceConfig = DEFAULT_TOL) -> Allocation:
    return operator_trace(base, ep, tol)[0]


def _require_ordered(ep: ExtendedProblem, what: str) -> None:
    if ep.c1 < ep.c2:
        raise PathPreconditionViolated(f"{what} needs c1 >= c2, got c = ({ep.c1!r}, {ep.c2!r})")


# ---------------------------------------------------------------- closed forms


def _cea_terms(ep: ExtendedProblem) -> ClosedFormTerms:
    s1, s2 = ep.s
    e = ep.E - ep.L
    K1 = max(s1 / (s1 + s2) * e, e - s2 * ep.c2)
    K2 = min(s2 / (s1 + s2) * e, s2 * ep.c2)
    return ClosedFormTerms(K1, K2)


def _cel_terms(ep: ExtendedProblem) -> ClosedFormTerms:
    s1, s2 = ep.s
    e = ep.E - ep.L
    d = ep.c1 - ep.c2
    K1 = min(s1 / (s1 + s2) * (e + s2 * d), e)
    K2 = max(s2 / (s1 + s2) * (e - s1 * d), 0.0)
    return ClosedFormTerms(K1, K2)


def _cd_terms(ep: ExtendedProblem) -> ClosedFormTerms:
    s1, s2 = ep.s
    e = ep.E - ep.L
    d = ep.c1 - ep.c2
    K1 = max(s1 * e / (s1 + s2), min(e - s2 * ep.c2 / 2, s1 / (s1 + s2) * (e + s2 * d)))
    K2 = min(s2 * e / (s1 + s2), max(s2 * ep.c2 / 2, s2 / (s1 + s2) * (e - s1 * d)))
    return ClosedFormTerms(K1, K2)


def _rt_terms(ep: ExtendedProblem) -> ClosedFormTerms:
    s1, s2 = ep.s
    e = ep.E - ep.L
    d = ep.c1 - ep.c2
    K1 = min(e, max(e - s2 * ep.c2, s1 / (s1 + s2) * (e + s2 * d / 2)))
    K2 = max(0.0, min(s2 * ep.c2, s2 / (s1 + s2) * (e - s1 * d / 2)))
    return ClosedFormTerms(K1, K2)


def _v_terms(ep: ExtendedProblem) -> ClosedFormTerms:
    s1, s2 = ep.s
    e = ep.E - ep.L
    w1, w2 = s1 * ep.c1, s2 * ep.c2
    if w2 == 0:
        # the dilated path is identically zero
        return ClosedFormTerms(e, 0.0)
    T = math.sqrt(w1 * w1 + 4 * w2 * e)
    K1 = w1 * (T - w1) / (2 * w2)
    return ClosedFormTerms(K1, e - K1, T)


_TERMS = {"cea": _cea_terms, "cel": _cel_terms, "cd": _cd_terms, "rt": _rt_terms, "v": _v_terms}


def _closed_form_domain(rule_id: str, ep: ExtendedProblem) -> None:
    if rule_id == "v":
        if ep.c1 == 0:
            raise ZeroClaimOne("extended V needs c1 > 0")
    else:
        _require_ordered(ep, f"closed form for {rule_id}")


def closed_form_terms(rule_id: str, ep: ExtendedProblem) -> ClosedFormTerms:
    """K1, K2 (and T for V) of the explicit formula; defined for E in [L, U]."""
    _closed_form_domain(rule_id, ep)
    if not ep.L <= ep.E <= ep.U:
        raise ValueError(f"closed-form terms need L <= E <= U, got E = {ep.E!r} with [{ep.L!r}, {ep.U!r}]")
    return _TERMS[rule_id](ep)


def _closed_form(rule_id: str):
    def allocate(ep: ExtendedProblem) -> Allocation:
        validate_extended(ep)
        _closed_form_domain(rule_id, ep)
        def inner(e):
            terms = _TERMS[rule_id](e)
            return terms.K1, terms.K2

        return _three_stage(ep, inner)

    allocate.__name__ = f"closed_form_{rule_id}"
    return allocate


closed_form_cea = _closed_form("cea")
closed_form_cel = _closed_form("cel")
closed_form_cd = _closed_form("cd")
closed_form_rt = _closed_form("rt")
closed_form_v = _closed_form("v")

CLOSED_FORMS = {
    "cea": closed_form_cea,
    "cel": closed_form_cel,
    "cd": closed_form_cd,
    "rt": closed_form_rt,
    "v": closed_form_v,
}


def extended_sd(ep: ExtendedProblem, tol: ToleranceConfig = DEFAULT_TOL) -> Allocation:
    """Extended SD rule, solved numerically (no explicit formula is kept)."""
    if ep.c1 == 0:
        raise ZeroClaimOne("extended SD needs c1 > 0")
    return apply_operator(RULES["sd"], ep, tol)


# ---------------------------------------------------------------- extended rules


def extend(base: Rule, mode: str = "generic", tol: ToleranceConfig = DEFAULT_TOL) -> ExtendedRule:
    """Wrap ``base`` as an extended rule usable on every claims orientation.

    Order-dependent bases are evaluated with both agents relabelled (claims
    and thresholds together) when c1 < c2; the operator treats the two labels
    alike, so this is the same extended rule.
    """
    if mode == "generic":
        core = lambda ep: apply_operator(base, ep, tol)  # noqa: E731
    elif mode == "closed_form":
        if base.id not in CLOSED_FORMS:
            raise ValueError(f"no closed form is kept for rule {base.id!r}")
        core = CLOSED_FORMS[base.id]
    else:
        raise ValueError(f"unknown mode {mode!r}")

    if base.order_dependent:
        def allocate(ep: ExtendedProblem) -> Allocation:
            if ep.c1 < ep.c2:
                return core(ep.swapped()).swapped()
            return core(ep)
    else:
        allocate = core
    return ExtendedRule(f"extended {base.name}", allocate, base, mode)


def extended_trace(base: Rule, ep: ExtendedProblem, tol: ToleranceConfig = DEFAULT_TOL):
    """Like :func:`operator_trace`, relabelling agents for order-dependent bases."""
    if base.order_dependent and ep.c1 < ep.c2:
        x, tr = operator_trace(base, ep.swapped(), tol)
        inner = tr.inner_solution[::-1] if tr.inner_solution is not None else None
        return x.swapped(), OperatorStageTrace(tr.stage, tr.exclusion_endowment, inner)
    return operator_trace(base, ep, tol)


def extended_breakpoints(base: Rule, ep: ExtendedProblem) -> list[float]:
    """Endowments in (0, C) at which the extended path of awards can change slope."""
    if base.order_dependent and ep.c1 < ep.c2:
        ep = ep.swapped()
    p, t = ep.problem, ep.thresholds
    L, U, C = ep.L, ep.U, ep.C
    s1, s2 = t.s
    points = {L, U}
    for k in base.kinks(p):
        points.add(L + s1 * k + s2 * base.path(p, k))
    return sorted(e for e in points if 0 < e < C)
