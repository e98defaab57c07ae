"""Standard two-agent division rules.

Every rule has two representations: a direct map ``allocate(p)`` and a
path of awards ``path(p, x1)`` giving agent 2's award when agent 1 gets
``x1``.  For CEA, CEL, CD and RT the path form only exists when the agents
are indexed so that ``c1 >= c2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import (
    DEFAULT_TOL,
    Allocation,
    ClaimsError,
    ClaimsProblem,
    PathPreconditionViolated,
    ToleranceConfig,
    ZeroClaimOne,
    bisect_increasing,
)


@dataclass(frozen=True)
class Rule:
    id: str
    name: str
    allocate: Callable[[ClaimsProblem], Allocation] = field(repr=False)
    path: Callable[[ClaimsProblem, float], float] = field(repr=False)
    order_dependent: bool = False
    # agent-anonymous: relabelling the agents relabels the awards
    symmetric: bool = True
    kinks: Callable[[ClaimsProblem], list] = field(default=lambda p: [], repr=False)

    def __call__(self, p: ClaimsProblem) -> Allocation:
        return self.allocate(p)

    def check_path_domain(self, p: ClaimsProblem) -> None:
        if self.order_dependent and p.c1 < p.c2:
            raise PathPreconditionViolated(
                f"{self.id} path form needs c1 >= c2, got c = ({p.c1!r}, {p.c2!r})"
            )


class UnknownRule(ClaimsError):
    pass


# ---------------------------------------------------------------- λ solves


def _cea_lambda(p: ClaimsProblem, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    return bisect_increasing(lambda lam: min(p.c1, lam) + min(p.c2, lam), p.E, 0.0, max(p.c1, p.c2), tol)


def _cel_lambda(p: ClaimsProblem, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    # total awards fall as λ grows, so solve on the negated objective
    return bisect_increasing(
        lambda lam: -(max(p.c1 - lam, 0.0) + max(p.c2 - lam, 0.0)), -p.E, 0.0, max(p.c1, p.c2), tol
    )


def _rt_lambda(p: ClaimsProblem, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    h1, h2 = p.c1 / 2, p.c2 / 2
    top = max(h1, h2)
    if p.E <= p.C / 2:
        return bisect_increasing(lambda lam: -(max(h1 - lam, 0.0) + max(h2 - lam, 0.0)), -p.E, 0.0, top, tol)
    return bisect_increasing(lambda lam: h1 + min(h1, lam) + h2 + min(h2, lam), p.E, 0.0, top, tol)


def balance_lambda(rule_id: str, p: ClaimsProblem, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """The balance parameter λ of a λ-defined rule (P, CEA, CEL, RT)."""
    if rule_id == "p":
        return p.E / p.C if p.C > 0 else 0.0
    solver = {"cea": _cea_lambda, "cel": _cel_lambda, "rt": _rt_lambda}.get(rule_id)
    if solver is None:
        raise UnknownRule(f"rule {rule_id!r} is not defined through a balance parameter")
    return solver(p, tol)


def lambda_awards(rule_id: str, p: ClaimsProblem, lam: float) -> Allocation:
    """Substitute ``lam`` into the rule's λ-formula, without enforcing balance."""
    c = p.claims
    if rule_id == "p":
        return Allocation(lam * c[0], lam * c[1])
    if rule_id == "cea":
        return Allocation(*(min(ci, lam) for ci in c))
    if rule_id == "cel":
        return Allocation(*(max(ci - lam, 0.0) for ci in c))
    if rule_id == "rt":
        if p.E <= p.C / 2:
            return Allocation(*(max(ci / 2 - lam, 0.0) for ci in c))
        return Allocation(*(ci / 2 + min(ci / 2, lam) for ci in c))
    raise UnknownRule(f"rule {rule_id!r} is not defined through a balance parameter")


# ---------------------------------------------------------------- direct forms


def proportional(p: ClaimsProblem) -> Allocation:
    if p.C == 0:
        return Allocation(0.0, 0.0)
    x1 = p.E * p.c1 / p.C
    return Allocation(x1, p.E - x1)


def cea(p: ClaimsProblem) -> Allocation:
    return lambda_awards("cea", p, _cea_lambda(p))


def cel(p: ClaimsProblem) -> Allocation:
    return lambda_awards("cel", p, _cel_lambda(p))


def concede_and_divide(p: ClaimsProblem) -> Allocation:
    E = p.E
    conceded_to_1 = max(E - p.c2, 0.0)
    conceded_to_2 = max(E - p.c1, 0.0)
    half = (E - conceded_to_1 - conceded_to_2) / 2
    return Allocation(conceded_to_1 + half, conceded_to_2 + half)


def reverse_talmud(p: ClaimsProblem) -> Allocation:
    return lambda_awards("rt", p, _rt_lambda(p))


def nonlinear_v(p: ClaimsProblem) -> Allocation:
    """V by the root of x1 + c2 (x1/c1)^2 = E, in cancellation-free form."""
    if p.c1 == 0:
        return Allocation(0.0, p.E)
    x1 = 2 * p.E * p.c1 / (p.c1 + math.sqrt(p.c1 * p.c1 + 4 * p.c2 * p.E))
    x1 = min(max(x1, 0.0), p.c1)
    return Allocation(x1, p.E - x1)


def selfdual_sd(p: ClaimsProblem) -> Allocation:
    """SD by Cardano's formula for the monotone cubic in t = x1/c1 - 1/2."""
    c1, c2, E = p.c1, p.c2, p.E
    if c1 == 0:
        return Allocation(0.0, E)
    if c2 == 0:
        return Allocation(E, 0.0)
    # 4 c2 t^3 + c1 t + (C/2 - E) = 0  ->  t^3 + a t + b = 0 with a > 0
    a = c1 / (4 * c2)
    b = (p.C / 2 - E) / (4 * c2)
    w = -b / 2
    r = math.sqrt(w * w + (a / 3) ** 3)
    A = float(np.cbrt(w + math.copysign(r, w))) if w != 0 else (a / 3) ** 0.5
    t = A - a / (3 * A)
    x1 = min(max(c1 * (t + 0.5), 0.0), c1)
    return Allocation(x1, E - x1)


# ---------------------------------------------------------------- path forms


def proportional_path(p: ClaimsProblem, x1: float) -> float:
    if p.c1 == 0:
        raise ZeroClaimOne("proportional path needs c1 > 0")
    return p.c2 / p.c1 * x1


def cea_path(p: ClaimsProblem, x1: float) -> float:
    return min(x1, p.c2)


def cel_path(p: ClaimsProblem, x1: float) -> float:
    return max(x1 - (p.c1 - p.c2), 0.0)


def cd_path(p: ClaimsProblem, x1: float) -> float:
    return min(x1, max(p.c2 / 2, x1 - (p.c1 - p.c2)))


def rt_path(p: ClaimsProblem, x1: float) -> float:
    return max(0.0, min(p.c2, x1 - (p.c1 - p.c2) / 2))


def nonlinear_v_path(p: ClaimsProblem, x1: float) -> float:
    if p.c1 == 0:
        raise ZeroClaimOne("V path needs c1 > 0")
    return p.c2 * (x1 / p.c1) ** 2


def selfdual_sd_path(p: ClaimsProblem, x1: float) -> float:
    if p.c1 == 0:
        raise ZeroClaimOne("SD path needs c1 > 0")
    # 4/c1^3 (x1 - c1/2)^3 == 4 t^3; this form is exact at both endpoints
    t = x1 / p.c1 - 0.5
    return p.c2 * (4 * t**3 + 0.5)


def _interior(points, c1):
    return sorted({x for x in points if 0 < x < c1})


def _cea_kinks(p):
    return _interior([p.c2], p.c1)


def _cel_kinks(p):
    return _interior([p.c1 - p.c2] if p.c2 > 0 else [], p.c1)


def _cd_kinks(p):
    if p.c1 == p.c2 or p.c2 == 0:
        return []
    return _interior([p.c2 / 2, p.c1 - p.c2 / 2], p.c1)


def _rt_kinks(p):
    if p.c1 == p.c2 or p.c2 == 0:
        return []
    return _interior([(p.c1 - p.c2) / 2, (p.c1 + p.c2) / 2], p.c1)


RULES: dict[str, Rule] = {
    r.id: r
    for r in (
        Rule("p", "proportional", proportional, proportional_path),
        Rule("cea", "constrained equal awards", cea, cea_path, order_dependent=True, kinks=_cea_kinks),
        Rule("cel", "constrained equal losses", cel, cel_path, order_dependent=True, kinks=_cel_kinks),
        Rule("cd", "concede-and-divide", concede_and_divide, cd_path, order_dependent=True, kinks=_cd_kinks),
        Rule("rt", "reverse Talmud", reverse_talmud, rt_path, order_dependent=True, kinks=_rt_kinks),
        Rule("v", "strictly nonlinear rule V", nonlinear_v, nonlinear_v_path, symmetric=False),
        Rule("sd", "differentiable self-dual rule SD", selfdual_sd, selfdual_sd_path, symmetric=False),
    )
}

P, CEA, CEL, CD, RT, V, SD = (RULES[k] for k in ("p", "cea", "cel", "cd", "rt", "v", "sd"))
CLASSIC = (P, CEA, CEL, CD, RT)


def get_rule(rule_id: str) -> Rule:
    try:
        return RULES[rule_id.lower()]
    except KeyError:
        raise UnknownRule(f"unknown rule {rule_id!r}; choose from {', '.join(RULES)}") from None


def allocate_from_path(rule: Rule, p: ClaimsProblem, tol: ToleranceConfig = DEFAULT_TOL) -> Allocation:
    """Allocate by solving x1 + path(x1) = E on [0, c1] by bisection."""
    rule.check_path_domain(p)
    if p.c1 == 0:
        return Allocation(0.0, p.E)
    x1 = bisect_increasing(lambda x: x + rule.path(p, x), p.E, 0.0, p.c1, tol)
    return Allocation(x1, p.E - x1)
