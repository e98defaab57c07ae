"""Seeded instance generation, axiom reports and certificate replay."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from ..core import (
    DEFAULT_TOL,
    TRIVIAL,
    Allocation,
    ClaimsError,
    ClaimsProblem,
    ExclusionThresholds,
    ExtendedProblem,
    ToleranceConfig,
    is_order_preserving,
)
from ..operator import ExtendedRule
from ..rules import Rule
from .predicates import AXIOMS, AxiomId

HOLDS = "holds_on_sample"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

DOMAIN_TAGS = ("full", "symmetric", "order_preserving", "exclusion_space")
# more skipped instances than this makes a "holds" verdict inconclusive
MAX_SKIP_FRACTION = 0.9
CLAIM_RANGE = (0.1, 100.0)
DECIMALS = 6


class InvalidSampleSpec(ClaimsError):
    pass


@dataclass(frozen=True)
class SampleSpec:
    seed: int = 0
    n: int = 500
    domain: str = "full"

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidSampleSpec(f"instance count must be a positive integer, got {self.n!r}")
        for tag in self.tags:
            if tag not in DOMAIN_TAGS:
                raise InvalidSampleSpec(f"unknown domain tag {tag!r}; expected some of {DOMAIN_TAGS}")

    @property
    def tags(self) -> frozenset[str]:
        return frozenset(t for t in self.domain.split("+") if t and t != "full")

    def with_domain(self, domain: str) -> SampleSpec:
        return SampleSpec(self.seed, self.n, domain)


@dataclass
class AxiomReport:
    axiom: str
    verdict: str
    rule: str
    seed: int
    n: int
    domain: str
    checked: int = 0
    skipped: int = 0
    certificate: dict[str, Any] | None = None
    witness: dict[str, Any] | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


# ---------------------------------------------------------------- generators


def instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def sample_claim(rng) -> float:
    lo, hi = np.log10(CLAIM_RANGE[0]), np.log10(CLAIM_RANGE[1])
    return float(10 ** rng.uniform(lo, hi))


def sample_claims(rng, equal: bool = False) -> tuple[float, float]:
    if equal:
        c = sample_claim(rng)
        return (c, c)
    return (sample_claim(rng), sample_claim(rng))


def _prop(x: float) -> float:
    return round(float(x), DECIMALS)


def sample_thresholds(rng, symmetric: bool = False) -> ExclusionThresholds:
    """Draw valid exclusion proportions.

    One agent gets the zero lower exclusion and one the unit upper exclusion,
    each chosen uniformly; the remaining proportions are uniform, with a small
    chance of being set to the trivial value so that L = 0 and U = C occur.
    """
    if symmetric:
        kind = int(rng.integers(4))
        if kind == 0:
            return TRIVIAL
        a = min(max(_prop(rng.uniform(0.0, 0.5)), 10.0**-DECIMALS), 0.5 - 10.0**-DECIMALS)
        b = _prop(1 - a)
        return ExclusionThresholds(a, 0.0, b, 1.0) if kind == 1 else ExclusionThresholds(0.0, a, 1.0, b)

    lower = [0.0, 0.0]
    upper = [1.0, 1.0]
    free_l = int(rng.integers(2))
    free_u = int(rng.integers(2))
    eps = 10.0**-DECIMALS
    if free_l == free_u:
        lo, hi = sorted(rng.uniform(0.0, 1.0, size=2))
        lo, hi = _prop(lo), _prop(hi)
        if hi - lo < eps:
            hi = lo + eps
        lower[free_l], upper[free_u] = min(lo, 1 - 2 * eps), min(max(hi, eps), 1.0)
        if lower[free_l] >= upper[free_u]:
            lower[free_l] = _prop(upper[free_u] - eps)
    else:
        lower[free_l] = min(_prop(rng.uniform(0.0, 1.0)), 1 - eps)
        upper[free_u] = max(_prop(rng.uniform(0.0, 1.0)), eps)
    if rng.uniform() < 0.1:
        lower[free_l] = 0.0
    if rng.uniform() < 0.1:
        upper[free_u] = 1.0
    return ExclusionThresholds(lower[0], lower[1], upper[0], upper[1])


# ---------------------------------------------------------------- rule views


def is_extended(rule) -> bool:
    return isinstance(rule, ExtendedRule)


def rule_name(rule) -> str:
    return rule.name if is_extended(rule) else rule.id


def standard_view(rule, t: ExclusionThresholds):
    """``f(c1, c2, E)`` for a base rule, or an extended rule at fixed proportions ``t``."""
    if is_extended(rule):
        return lambda c1, c2, E: rule.allocate(ExtendedProblem(ClaimsProblem(c1, c2, E), t))
    return lambda c1, c2, E: rule.allocate(ClaimsProblem(c1, c2, E))


def reduced_view(f, t: ExclusionThresholds):
    """The rule seen inside the exclusion space.

    Claims there are s_i c_i, the endowment is E - L and awards are shifted by
    the lower thresholds l_i c_i.
    """
    s1, s2 = t.s

    def g(r1, r2, e):
        c1, c2 = r1 / s1, r2 / s2
        x = f(c1, c2, t.l1 * c1 + t.l2 * c2 + e)
        return Allocation(x[0] - t.l1 * c1, x[1] - t.l2 * c2)

    return g


def build_instance(rule, axiom_id: AxiomId, tags: frozenset, rng):
    """Return (thresholds, axiom-level claims, rule view) for one sampled instance."""
    axiom = AXIOMS[axiom_id]
    extended = is_extended(rule)
    for _ in range(1000):
        t = sample_thresholds(rng, symmetric="symmetric" in tags) if extended else TRIVIAL
        claims = sample_claims(rng, equal=axiom.equal_claims)
        if "exclusion_space" in tags:
            # claims drawn here are the reduced claims s_i c_i
            c = (claims[0] / t.s1, claims[1] / t.s2)
        else:
            c = claims
        if "order_preserving" in tags and not is_order_preserving(ClaimsProblem(c[0], c[1], 0.0), t):
            continue
        f = standard_view(rule, t)
        if "exclusion_space" in tags:
            f = reduced_view(f, t)
        return t, claims, f
    raise InvalidSampleSpec(f"could not sample an instance for domain {sorted(tags)}")


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, np.generic):
        return v.item()
    return v


def check_axiom(rule, axiom: AxiomId | str, spec: SampleSpec = SampleSpec(), tol: ToleranceConfig = DEFAULT_TOL) -> AxiomReport:
    """Evaluate one axiom on ``spec.n`` seeded instances.

    ``rule`` is a base :class:`Rule` (evaluated on standard problems) or an
    :class:`ExtendedRule` (evaluated with sampled exclusion thresholds drawn
    from ``spec.domain``).  The first violating instance, by index, becomes
    the certificate.
    """
    axiom_id = AxiomId(axiom)
    if axiom_id not in AXIOMS:
        raise InvalidSampleSpec(f"{axiom_id.value} is checked by the characterization suite, not check_axiom")
    ax = AXIOMS[axiom_id]
    report = AxiomReport(axiom_id.value, HOLDS, rule_name(rule), spec.seed, spec.n, spec.domain)
    for idx in range(spec.n):
        rng = instance_rng(spec.seed, idx)
        t, claims, f = build_instance(rule, axiom_id, spec.tags, rng)
        params = ax.draw(rng, claims, f)
        out = ax.check(f, claims, params, tol)
        if out.ok is None:
            report.skipped += 1
            continue
        report.checked += 1
        if not out.ok:
            report.verdict = VIOLATED
            report.certificate = {
                "instance": idx,
                "claims": list(claims),
                "lower": list(t.lower),
                "upper": list(t.upper),
                "domain": spec.domain,
                "params": {k: _plain(v) for k, v in params.items()},
                "relation": out.relation,
                "lhs": _plain(out.lhs),
                "rhs": _plain(out.rhs),
            }
            return report
    if report.checked == 0 or report.skipped > MAX_SKIP_FRACTION * spec.n:
        report.verdict = INCONCLUSIVE
    return report


def replay_certificate(rule, report: AxiomReport | dict, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Re-evaluate a violation certificate in isolation.

    True when the violation reproduces with both sides within ``tol.abs`` of
    the recorded values.
    """
    data = report.to_dict() if isinstance(report, AxiomReport) else report
    cert = data["certificate"]
    if cert is None:
        return False
    t = ExclusionThresholds(*cert["lower"], *cert["upper"])
    tags = SampleSpec(domain=cert["domain"]).tags
    f = standard_view(rule, t)
    if "exclusion_space" in tags:
        f = reduced_view(f, t)
    out = AXIOMS[AxiomId(data["axiom"])].check(f, tuple(cert["claims"]), cert["params"], tol)
    if out.ok is not False:
        return False
    return abs(out.lhs - cert["lhs"]) <= tol.abs and abs(out.rhs - cert["rhs"]) <= tol.abs
