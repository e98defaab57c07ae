"""Dilation transformation of paths of awards onto the exclusion space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (
    DEFAULT_TOL,
    ClaimsError,
    ClaimsProblem,
    ExclusionThresholds,
    ToleranceConfig,
    bisect_increasing,
)
from .rules import Rule


class DomainViolation(ClaimsError):
    pass


class OutOfRange(ClaimsError):
    pass


@dataclass(frozen=True)
class DilationSpec:
    a: float  # horizontal scale
    b: float  # vertical scale

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"dilation scales must be positive, got a={self.a!r}, b={self.b!r}")


def dilate_scalar(f: Callable[[float], float], spec: DilationSpec, z: float, domain=None) -> float:
    """Evaluate b * f(z / a).

    ``domain`` is an optional closed interval for ``f``; arguments outside it
    raise :class:`DomainViolation`.
    """
    arg = z / spec.a
    if domain is not None and not domain[0] <= arg <= domain[1]:
        raise DomainViolation(f"z/a = {arg!r} outside [{domain[0]!r}, {domain[1]!r}]")
    return spec.b * f(arg)


def _clamp(y: float, hi: float, tol: ToleranceConfig) -> float:
    if y < -tol.abs or y > hi + tol.abs + tol.rel * hi:
        raise DomainViolation(f"y = {y!r} outside [0, {hi!r}]")
    return min(max(y, 0.0), hi)


def dilated_rule_path(
    base: Rule, p: ClaimsProblem, t: ExclusionThresholds, y: float, tol: ToleranceConfig = DEFAULT_TOL
) -> float:
    """Agent 2's exclusion-space award s2 * R(y / s1) when agent 1 holds ``y``."""
    base.check_path_domain(p)
    s1, s2 = t.s
    y = _clamp(y, s1 * p.c1, tol)
    if p.c1 == 0:
        return 0.0
    return dilate_scalar(lambda x1: base.path(p, x1), DilationSpec(s1, s2), y)


def dilated_allocation(
    base: Rule, p: ClaimsProblem, t: ExclusionThresholds, E_in: float, tol: ToleranceConfig = DEFAULT_TOL
) -> tuple[float, float]:
    """Split ``E_in`` inside the exclusion space along the dilated path."""
    base.check_path_domain(p)
    s1, s2 = t.s
    w1, w2 = s1 * p.c1, s2 * p.c2
    room = w1 + w2
    if E_in < -tol.abs or E_in > room + tol.abs + tol.rel * room:
        raise OutOfRange(f"exclusion-space endowment {E_in!r} outside [0, {room!r}]")
    E_in = min(max(E_in, 0.0), room)
    if w1 == 0:
        return (0.0, E_in)
    if w2 == 0:
        return (E_in, 0.0)

    def total(y1):
        return y1 + s2 * base.path(p, y1 / s1)

    y1 = bisect_increasing(total, E_in, 0.0, w1, tol)
    y2 = min(max(E_in - y1, 0.0), w2)
    return (E_in - y2, y2)
