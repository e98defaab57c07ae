"""Domain types and validation for two-agent claims problems with exclusions.

Inputs are validated exactly; computed allocations are checked against a
:class:`ToleranceConfig`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real


class ClaimsError(ValueError):
    """Base class for every error raised by this package."""


class ValidationError(ClaimsError):
    pass


class NegativeClaim(ValidationError):
    pass


class NegativeEndowment(ValidationError):
    pass


class EndowmentExceedsClaims(ValidationError):
    pass


class LowerNotBelowUpper(ValidationError):
    pass


class NoZeroLower(ValidationError):
    pass


class NoUnitUpper(ValidationError):
    pass


class OutOfRangeProportion(ValidationError):
    pass


class EmptyExclusionSpace(ValidationError):
    """Aggregate thresholds collapse (L >= U), which only happens when C = 0."""


class InvalidAllocation(ClaimsError):
    pass


class PathPreconditionViolated(ClaimsError):
    pass


class ZeroClaimOne(ClaimsError):
    pass


class ZeroClaimTwo(ClaimsError):
    pass


class SolverNoConvergence(ClaimsError):
    pass


@dataclass(frozen=True)
class ToleranceConfig:
    abs: float = 1e-9
    rel: float = 1e-9
    solver_iters: int = 200
    # bisection stops once the bracket is narrower than solver_xtol * (1 + width0)
    solver_xtol: float = 1e-13

    def __post_init__(self):
        if not (self.abs > 0 and self.rel > 0):
            raise ValueError("tolerances must be positive")
        if self.solver_iters < 1:
            raise ValueError("solver_iters must be a positive integer")

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.abs + self.rel * max(abs(a), abs(b))


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class ClaimsProblem:
    c1: float
    c2: float
    E: float

    @property
    def C(self) -> float:
        return self.c1 + self.c2

    @property
    def claims(self) -> tuple[float, float]:
        return (self.c1, self.c2)

    def swapped(self) -> ClaimsProblem:
        return ClaimsProblem(self.c2, self.c1, self.E)

    def with_endowment(self, E: float) -> ClaimsProblem:
        return ClaimsProblem(self.c1, self.c2, E)


@dataclass(frozen=True)
class Allocation:
    x1: float
    x2: float

    def __iter__(self):
        yield self.x1
        yield self.x2

    def __getitem__(self, i: int) -> float:
        return (self.x1, self.x2)[i]

    def swapped(self) -> Allocation:
        return Allocation(self.x2, self.x1)


@dataclass(frozen=True)
class ExclusionThresholds:
    l1: float = 0.0
    l2: float = 0.0
    u1: float = 1.0
    u2: float = 1.0

    @property
    def lower(self) -> tuple[float, float]:
        return (self.l1, self.l2)

    @property
    def upper(self) -> tuple[float, float]:
        return (self.u1, self.u2)

    @property
    def s1(self) -> float:
        return self.u1 - self.l1

    @property
    def s2(self) -> float:
        return self.u2 - self.l2

    @property
    def s(self) -> tuple[float, float]:
        return (self.s1, self.s2)

    def L(self, p: ClaimsProblem) -> float:
        return self.l1 * p.c1 + self.l2 * p.c2

    def U(self, p: ClaimsProblem) -> float:
        return self.u1 * p.c1 + self.u2 * p.c2

    def swapped(self) -> ExclusionThresholds:
        return ExclusionThresholds(self.l2, self.l1, self.u2, self.u1)

    @property
    def is_trivial(self) -> bool:
        return self.l1 == 0 and self.l2 == 0 and self.u1 == 1 and self.u2 == 1


TRIVIAL = ExclusionThresholds()


@dataclass(frozen=True)
class ExtendedProblem:
    problem: ClaimsProblem
    thresholds: ExclusionThresholds = TRIVIAL

    @classmethod
    def of(cls, c1, c2, E, lower=(0.0, 0.0), upper=(1.0, 1.0)) -> ExtendedProblem:
        return cls(ClaimsProblem(c1, c2, E), ExclusionThresholds(*lower, *upper))

    @property
    def c1(self) -> float:
        return self.problem.c1

    @property
    def c2(self) -> float:
        return self.problem.c2

    @property
    def E(self) -> float:
        return self.problem.E

    @property
    def C(self) -> float:
        return self.problem.C

    @property
    def L(self) -> float:
        return self.thresholds.L(self.problem)

    @property
    def U(self) -> float:
        return self.thresholds.U(self.problem)

    @property
    def s(self) -> tuple[float, float]:
        return self.thresholds.s

    @property
    def S(self) -> float:
        """Size of the exclusion space, s1*c1 + s2*c2."""
        t = self.thresholds
        return t.s1 * self.c1 + t.s2 * self.c2

    def with_endowment(self, E: float) -> ExtendedProblem:
        return ExtendedProblem(self.problem.with_endowment(E), self.thresholds)

    def swapped(self) -> ExtendedProblem:
        return ExtendedProblem(self.problem.swapped(), self.thresholds.swapped())


def _check_real(name, value):
    if not isinstance(value, Real) or isinstance(value, bool) or not math.isfinite(value):
        raise ValidationError(f"{name} must be a finite real number, got {value!r}")


def validate_problem(p: ClaimsProblem) -> None:
    """Raise a :class:`ValidationError` subclass unless ``p`` is a claims problem."""
    for name in ("c1", "c2", "E"):
        _check_real(name, getattr(p, name))
    for name in ("c1", "c2"):
        if getattr(p, name) < 0:
            raise NegativeClaim(f"{name} = {getattr(p, name)!r} is negative")
    if p.E < 0:
        raise NegativeEndowment(f"E = {p.E!r} is negative")
    if p.E > p.C:
        raise EndowmentExceedsClaims(f"E = {p.E!r} exceeds C = c1 + c2 = {p.C!r}")


def validate_thresholds(p: ClaimsProblem, t: ExclusionThresholds) -> None:
    for name in ("l1", "l2", "u1", "u2"):
        _check_real(name, getattr(t, name))
    for name in ("l1", "l2"):
        v = getattr(t, name)
        if not 0 <= v < 1:
            raise OutOfRangeProportion(f"{name} = {v!r} is outside [0, 1)")
    for name in ("u1", "u2"):
        v = getattr(t, name)
        if not 0 < v <= 1:
            raise OutOfRangeProportion(f"{name} = {v!r} is outside (0, 1]")
    for i, (lo, up) in enumerate(zip(t.lower, t.upper), start=1):
        if not lo < up:
            raise LowerNotBelowUpper(f"l{i} = {lo!r} is not below u{i} = {up!r}")
    if t.l1 != 0 and t.l2 != 0:
        raise NoZeroLower(f"one lower exclusion must be zero, got l = ({t.l1!r}, {t.l2!r})")
    if t.u1 != 1 and t.u2 != 1:
        raise NoUnitUpper(f"one upper exclusion must be one, got u = ({t.u1!r}, {t.u2!r})")
    L, U = t.L(p), t.U(p)
    if not L < U:
        raise EmptyExclusionSpace(f"L = {L!r} is not below U = {U!r} (C = {p.C!r})")


def validate_extended(ep: ExtendedProblem) -> None:
    validate_problem(ep.problem)
    validate_thresholds(ep.problem, ep.thresholds)


def _exact(x) -> Fraction:
    # Floats compare by their shortest decimal repr, so 0.2 == 1 - 0.8 holds.
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def is_symmetric(t: ExclusionThresholds) -> bool:
    """True when each agent's lower exclusion equals one minus its upper exclusion."""
    return all(_exact(lo) == 1 - _exact(up) for lo, up in zip(t.lower, t.upper))


def is_order_preserving(p: ClaimsProblem, t: ExclusionThresholds) -> bool:
    """True when scaling claims by s = u - l never reverses their weak order."""
    c = p.claims
    sc = (t.s1 * p.c1, t.s2 * p.c2)
    for i, j in ((0, 1), (1, 0)):
        if c[i] <= c[j] and not sc[i] <= sc[j]:
            return False
    return True


def check_allocation(p: ClaimsProblem, x: Allocation, tol: ToleranceConfig = DEFAULT_TOL) -> None:
    """Raise :class:`InvalidAllocation` if ``x`` breaks boundedness or balance."""
    for i, (xi, ci) in enumerate(zip(x, p.claims), start=1):
        if not (-tol.abs <= xi <= ci + tol.abs + tol.rel * ci):
            raise InvalidAllocation(f"x{i} = {xi!r} outside [0, c{i}] = [0, {ci!r}]")
    if abs(x.x1 + x.x2 - p.E) > tol.abs + tol.rel * p.E:
        raise InvalidAllocation(f"x1 + x2 = {x.x1 + x.x2!r} != E = {p.E!r}")


def bisect_increasing(g, target: float, lo: float, hi: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Solve ``g(x) = target`` for nondecreasing continuous ``g`` on ``[lo, hi]``.

    The target must lie in ``[g(lo), g(hi)]`` up to rounding; values outside
    are clamped to the bracket ends.
    """
    if hi <= lo:
        return lo
    if target <= g(lo):
        return lo
    if target >= g(hi):
        return hi
    xtol = tol.solver_xtol * (1.0 + (hi - lo))
    for _ in range(tol.solver_iters):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= xtol:
            return mid
        if g(mid) < target:
            lo = mid
        else:
            hi = mid
    if hi - lo <= max(tol.abs, xtol):
        return 0.5 * (lo + hi)
    raise SolverNoConvergence(f"bracket [{lo!r}, {hi!r}] still wider than tolerance after {tol.solver_iters} steps")
