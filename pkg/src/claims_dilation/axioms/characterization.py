"""Checks of the three exclusion axioms and the independence matrix."""

from __future__ import annotations

from typing import Any, Callable, Sequence


from ..core import (
    DEFAULT_TOL,
    TRIVIAL,
    ClaimsError,
    ClaimsProblem,
    ExclusionThresholds,
    ExtendedProblem,
    ToleranceConfig,
)
from ..operator import ExtendedRule, extend
from ..rules import Rule
from .independence import INDEPENDENCE_RULES
from .predicates import EXCLUSION_AXIOMS, AxiomId
from .sampling import (
    HOLDS,
    INCONCLUSIVE,
    VIOLATED,
    AxiomReport,
    SampleSpec,
    instance_rng,
    rule_name,
    sample_claims,
    sample_thresholds,
)

# endowments tried per instance, besides 0 and C
INVARIANCE_DRAWS = 6
GRID_STEPS = 10


class InvalidWitness(ClaimsError):
    pass


def _delta(rule: ExtendedRule, c, E, t: ExclusionThresholds):
    C = c[0] + c[1]
    return rule.allocate(ExtendedProblem(ClaimsProblem(c[0], c[1], min(max(E, 0.0), C)), t))


def _draw_instance(spec: SampleSpec, idx: int):
    rng = instance_rng(spec.seed, idx)
    t = sample_thresholds(rng, symmetric="symmetric" in spec.tags)
    c = sample_claims(rng)
    return rng, t, c


def _cert(idx, c, t, **extra) -> dict[str, Any]:
    return {"instance": idx, "claims": list(c), "lower": list(t.lower), "upper": list(t.upper), **extra}


def _finish(report: AxiomReport) -> AxiomReport:
    if report.verdict == HOLDS and report.checked == 0:
        report.verdict = INCONCLUSIVE
    return report


def check_full_exclusion(rule: ExtendedRule, spec: SampleSpec = SampleSpec(), tol: ToleranceConfig = DEFAULT_TOL) -> AxiomReport:
    """If l_i c_i >= E then agent j gets nothing."""
    report = AxiomReport(AxiomId.FullExclusion.value, HOLDS, rule_name(rule), spec.seed, spec.n, spec.domain)
    for idx in range(spec.n):
        rng, t, c = _draw_instance(spec, idx)
        for i in (0, 1):
            j = 1 - i
            top = t.lower[i] * c[i]
            for E in (float(rng.uniform(0.0, top)) if top > 0 else 0.0, top):
                x = _delta(rule, c, E, t)
                report.checked += 1
                if abs(x[j]) > tol.abs:
                    report.verdict = VIOLATED
                    report.certificate = _cert(idx, c, t, E=E, agent=j, lhs=x[j], rhs=0.0, relation=f"R{j + 1} == 0")
                    return report
    return _finish(report)


def check_null_exclusion(rule: ExtendedRule, spec: SampleSpec = SampleSpec(), tol: ToleranceConfig = DEFAULT_TOL) -> AxiomReport:
    """If u_i c_i <= E - c_j then agent j gets its whole claim."""
    report = AxiomReport(AxiomId.NullExclusion.value, HOLDS, rule_name(rule), spec.seed, spec.n, spec.domain)
    for idx in range(spec.n):
        rng, t, c = _draw_instance(spec, idx)
        C = c[0] + c[1]
        for i in (0, 1):
            j = 1 - i
            bottom = min(t.upper[i] * c[i] + c[j], C)
            for E in (float(rng.uniform(bottom, C)), bottom):
                x = _delta(rule, c, E, t)
                report.checked += 1
                if not tol.close(x[j], c[j]):
                    report.verdict = VIOLATED
                    report.certificate = _cert(idx, c, t, E=E, agent=j, lhs=x[j], rhs=c[j], relation=f"R{j + 1} == c{j + 1}")
                    return report
    return _finish(report)


def _candidates(t: ExclusionThresholds, extra: Sequence) -> list[tuple[str, tuple[float, float]]]:
    s1, s2 = t.s
    out = [("l", t.lower), ("zero", (0.0, 0.0)), ("one_minus_s", (1 - s1, 1 - s2))]
    for m in extra:
        m = tuple(m(t)) if callable(m) else tuple(m)
        for mi, si in zip(m, (s1, s2)):
            if not -DEFAULT_TOL.abs <= mi <= 1 - si + DEFAULT_TOL.abs:
                raise InvalidWitness(f"candidate m = {m!r} leaves [0, 1 - s] for s = ({s1!r}, {s2!r})")
        out.append(("user", m))
    return out


def _grid(t: ExclusionThresholds):
    s1, s2 = t.s
    for a in range(GRID_STEPS + 1):
        for b in range(GRID_STEPS + 1):
            yield "grid", (a / GRID_STEPS * (1 - s1), b / GRID_STEPS * (1 - s2))


def _invariance_failure(rule, c, t, m, E, tol):
    """First violated component of delta(c, s*x + m*c, t) = s*x + m*c, or None."""
    s = t.s
    x = _delta(rule, c, E, TRIVIAL)
    target = [s[i] * x[i] + m[i] * c[i] for i in (0, 1)]
    y = _delta(rule, c, target[0] + target[1], t)
    for i in (0, 1):
        if not tol.close(y[i], target[i]):
            return {"E": E, "agent": i, "lhs": y[i], "rhs": target[i]}
    return None


def check_prop_excl_invariance(
    rule: ExtendedRule,
    m_candidates: Sequence[Sequence[float] | Callable] | None = None,
    spec: SampleSpec = SampleSpec(),
    tol: ToleranceConfig = DEFAULT_TOL,
) -> AxiomReport:
    """Search, per instance, for m with delta(c, s*x + m*c, t) = s*x + m*c for
    every sampled E, where x = delta(c, E) at trivial thresholds.

    Candidates l, 0, 1 - s and any user-supplied ones are tried first, then a
    grid over the box [0, 1 - s].  An instance with no working m is a
    violation.  ``witness`` counts which candidate label succeeded.
    """
    report = AxiomReport(AxiomId.PropExclInvariance.value, HOLDS, rule_name(rule), spec.seed, spec.n, spec.domain)
    counts: dict[str, int] = {}
    extra = list(m_candidates or [])
    for idx in range(spec.n):
        rng, t, c = _draw_instance(spec, idx)
        C = c[0] + c[1]
        Es = [0.0, C, *(float(e) for e in rng.uniform(0.0, C, size=INVARIANCE_DRAWS))]
        failures = []
        found = None
        for label, m in [*_candidates(t, extra), *_grid(t)]:
            bad = None
            for E in Es:
                bad = _invariance_failure(rule, c, t, m, E, tol)
                if bad is not None:
                    break
            if bad is None:
                found = (label, m)
                break
            if label != "grid":
                failures.append({"label": label, "m": list(m), **bad})
        report.checked += 1
        if found is None:
            report.verdict = VIOLATED
            report.certificate = _cert(idx, c, t, endowments=Es, failures=failures, grid_exhausted=True)
            report.witness = counts
            return report
        counts[found[0]] = counts.get(found[0], 0) + 1
    report.witness = counts
    return _finish(report)


def replay_invariance_certificate(rule: ExtendedRule, report: AxiomReport | dict, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when every recorded candidate failure reproduces."""
    data = report.to_dict() if isinstance(report, AxiomReport) else report
    cert = data["certificate"]
    if cert is None:
        return False
    t = ExclusionThresholds(*cert["lower"], *cert["upper"])
    for f in cert["failures"]:
        again = _invariance_failure(rule, tuple(cert["claims"]), t, tuple(f["m"]), f["E"], tol)
        if again is None:
            return False
    return True


def replay_exclusion_certificate(rule: ExtendedRule, report: AxiomReport | dict, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Re-evaluate a certificate from any of the three exclusion checks."""
    data = report.to_dict() if isinstance(report, AxiomReport) else report
    cert = data["certificate"]
    if cert is None:
        return False
    if data["axiom"] == AxiomId.PropExclInvariance.value:
        return replay_invariance_certificate(rule, data, tol)
    t = ExclusionThresholds(*cert["lower"], *cert["upper"])
    c = tuple(cert["claims"])
    j = cert["agent"]
    value = _delta(rule, c, cert["E"], t)[j]
    if abs(value - cert["lhs"]) > tol.abs:
        return False
    if data["axiom"] == AxiomId.FullExclusion.value:
        return abs(value) > tol.abs
    return not tol.close(value, c[j])


def check_exclusion_axiom(rule: ExtendedRule, axiom: AxiomId | str, spec: SampleSpec = SampleSpec(), tol: ToleranceConfig = DEFAULT_TOL) -> AxiomReport:
    axiom = AxiomId(axiom)
    if axiom == AxiomId.FullExclusion:
        return check_full_exclusion(rule, spec, tol)
    if axiom == AxiomId.NullExclusion:
        return check_null_exclusion(rule, spec, tol)
    if axiom == AxiomId.PropExclInvariance:
        return check_prop_excl_invariance(rule, None, spec, tol)
    raise ValueError(f"{axiom.value} is not an exclusion axiom")


def characterization_suite(base: Rule | ExtendedRule, spec: SampleSpec = SampleSpec(), tol: ToleranceConfig = DEFAULT_TOL) -> dict[str, Any]:
    """Check the operator on ``base`` against all three exclusion axioms, and each
    independence rule against the same three.

    ``pattern_ok`` is true when the operator satisfies all three and rule k
    violates exactly axiom k.
    """
    operator = base if isinstance(base, ExtendedRule) else extend(base)
    op_reports = {a.value: check_exclusion_axiom(operator, a, spec, tol) for a in EXCLUSION_AXIOMS}
    matrix: dict[str, dict[str, str]] = {}
    ind_reports: dict[str, dict[str, AxiomReport]] = {}
    for key, rule in INDEPENDENCE_RULES.items():
        ind_reports[key] = {a.value: check_exclusion_axiom(rule, a, spec, tol) for a in EXCLUSION_AXIOMS}
        matrix[key] = {a: r.verdict for a, r in ind_reports[key].items()}

    ok = all(r.verdict == HOLDS for r in op_reports.values())
    for k, key in enumerate(INDEPENDENCE_RULES):
        for a_idx, a in enumerate(EXCLUSION_AXIOMS):
            want = VIOLATED if a_idx == k else HOLDS
            ok = ok and matrix[key][a.value] == want
    return {
        "rule": operator.name,
        "seed": spec.seed,
        "n": spec.n,
        "operator": {a: r.to_dict() for a, r in op_reports.items()},
        "independence": {k: {a: r.to_dict() for a, r in v.items()} for k, v in ind_reports.items()},
        "matrix": matrix,
        "pattern_ok": ok,
    }
