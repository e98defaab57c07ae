"""Extended rules that each satisfy two of the three exclusion axioms.

Rule 1 drops full exclusion, rule 2 drops null exclusion and rule 3 drops
proportional exclusion invariance.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import Allocation, ClaimsError, ExtendedProblem, validate_extended
from ..operator import ExtendedRule, _above_U, _below_L


class DegenerateL(ClaimsError):
    pass


@dataclass(frozen=True)
class IndependenceRuleParams:
    S: float
    S_a: float | None

    @classmethod
    def of(cls, ep: ExtendedProblem) -> IndependenceRuleParams:
        if ep.L == 0:
            return cls(ep.S, None)
        return cls(ep.S, sum(s * c * h for s, c, h in zip(ep.thresholds.s, (ep.c1, ep.c2), _halves(ep))))


def _halves(ep: ExtendedProblem) -> tuple[float, float]:
    """l_i c_i / (2L), the weights of the half-claim stage of rule 3."""
    L = ep.L
    if L == 0:
        return (0.0, 0.0)
    return tuple(l * c / (2 * L) for l, c in zip(ep.thresholds.lower, (ep.c1, ep.c2)))


def _each(f):
    return Allocation(float(f(0)), float(f(1)))


def independence_rule_1(ep: ExtendedProblem) -> Allocation:
    """Proportional to s_i c_i up to S, then the lower-excluded agent up to U."""
    validate_extended(ep)
    c, t = (ep.c1, ep.c2), ep.thresholds
    s, l, u = t.s, t.lower, t.upper
    E, L, U, S = ep.E, ep.L, ep.U, ep.S
    if E <= S:
        return _each(lambda i: s[i] * c[i] / S * E)
    if E < U:
        if L == 0:
            raise DegenerateL("the (S, U) branch needs L > 0")
        return _each(lambda i: s[i] * c[i] + l[i] * c[i] / L * (E - S))
    if E == U:
        return _each(lambda i: u[i] * c[i])
    return _above_U(ep)


def independence_rule_2(ep: ExtendedProblem) -> Allocation:
    """Lower thresholds first, then (1 - u_i) c_i shares up to C - S, then s_i c_i shares."""
    validate_extended(ep)
    c, t = (ep.c1, ep.c2), ep.thresholds
    s, l, u = t.s, t.lower, t.upper
    E, L, U, S, C = ep.E, ep.L, ep.U, ep.S, ep.C
    if E < L:
        return _below_L(ep)
    if E == L:
        return _each(lambda i: l[i] * c[i])
    if E < C - S:
        return _each(lambda i: l[i] * c[i] + (1 - u[i]) * c[i] / (C - U) * (E - L))
    return _each(lambda i: (1 - s[i]) * c[i] + s[i] * c[i] / S * (E - C + S))


def independence_rule_3(ep: ExtendedProblem) -> Allocation:
    """Lower thresholds, then half the exclusion-space claim of the lower-excluded
    agent, then proportional to the upper-threshold corner.

    With both lower exclusions zero the half-claim stage is empty (S_a = 0)
    and the rule is proportional between the origin and U.
    """
    validate_extended(ep)
    c, t = (ep.c1, ep.c2), ep.thresholds
    s, l, u = t.s, t.lower, t.upper
    E, L, U, S = ep.E, ep.L, ep.U, ep.S
    S_a = IndependenceRuleParams.of(ep).S_a or 0.0
    half = _halves(ep)
    if E < L:
        return _below_L(ep)
    if E == L:
        return _each(lambda i: l[i] * c[i])
    if E < L + S_a:
        return _each(lambda i: l[i] * c[i] + s[i] * c[i] / S_a * half[i] * (E - L))
    corner = [l[i] * c[i] + s[i] * c[i] * half[i] for i in (0, 1)]
    if E == L + S_a:
        return Allocation(*corner)
    if E < U:
        return _each(lambda i: corner[i] + s[i] * c[i] * (1 - half[i]) / (S - S_a) * (E - L - S_a))
    if E == U:
        return _each(lambda i: u[i] * c[i])
    return _above_U(ep)


INDEPENDENCE_RULES = {
    "rule_1": ExtendedRule("independence rule 1 (drops full exclusion)", independence_rule_1, mode="independence"),
    "rule_2": ExtendedRule("independence rule 2 (drops null exclusion)", independence_rule_2, mode="independence"),
    "rule_3": ExtendedRule("independence rule 3 (drops proportional exclusion invariance)", independence_rule_3, mode="independence"),
}
