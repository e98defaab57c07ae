"""Axioms on two-agent rules as executable predicates.

Each axiom is split into ``draw`` (pick the endowments, scale factors, ...
that its quantifiers range over) and ``evaluate`` (the literal inequality).
Keeping the two apart lets a recorded violation be replayed from its
parameters alone.

Rules are seen here as plain functions ``f(c1, c2, E) -> Allocation``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable

from ..core import DEFAULT_TOL, Allocation, ToleranceConfig

RuleFn = Callable[[float, float, float], Allocation]


class AxiomId(str, Enum):
    ETE = "ETE"
    OrderPres = "OrderPres"
    EndowMono = "EndowMono"
    ClaimMono = "ClaimMono"
    Homogeneity = "Homogeneity"
    Midpoint = "Midpoint"
    SelfDual = "SelfDual"
    RestrEndowConvex = "RestrEndowConvex"
    Progressivity = "Progressivity"
    Regressivity = "Regressivity"
    Concavity = "Concavity"
    Convexity = "Convexity"
    FullExclusion = "FullExclusion"
    NullExclusion = "NullExclusion"
    PropExclInvariance = "PropExclInvariance"


STANDARD_AXIOMS = tuple(AxiomId)[:12]
EXCLUSION_AXIOMS = (AxiomId.FullExclusion, AxiomId.NullExclusion, AxiomId.PropExclInvariance)

HOMOGENEITY_FACTORS = (0.5, 2.0, 3.0)
CONVEXITY_WEIGHTS = (0.25, 0.5, 0.75)
REC_ATTEMPTS = 25


@dataclass(frozen=True)
class Outcome:
    """Result of one evaluation; ``ok is None`` means the instance was skipped."""

    ok: bool | None
    lhs: Any = None
    rhs: Any = None
    relation: str = ""


SKIP = Outcome(None)


def _le(a: float, b: float, tol: ToleranceConfig) -> bool:
    return a <= b + tol.abs + tol.rel * max(abs(a), abs(b))


def _pairs(c):
    """Ordered agent pairs (i, j) with c_i <= c_j."""
    return [(i, j) for i, j in ((0, 1), (1, 0)) if c[i] <= c[j]]


def _uniform_E(rng, c) -> float:
    return float(rng.uniform(0.0, c[0] + c[1]))


# ---------------------------------------------------------------- evaluations


def _ete(f, c, prm, tol):
    x = f(c[0], c[1], prm["E"])
    return Outcome(abs(x[0] - x[1]) <= tol.abs + tol.rel * max(abs(x[0]), abs(x[1])), x[0], x[1], "R1 == R2")


def _order_pres(f, c, prm, tol):
    x = f(c[0], c[1], prm["E"])
    for i, j in _pairs(c):
        if not _le(x[i], x[j], tol):
            return Outcome(False, x[i], x[j], f"R{i + 1} <= R{j + 1}")
        if not _le(c[i] - x[i], c[j] - x[j], tol):
            return Outcome(False, c[i] - x[i], c[j] - x[j], f"c{i + 1}-R{i + 1} <= c{j + 1}-R{j + 1}")
    return Outcome(True)


def _endow_mono(f, c, prm, tol):
    lo, hi = f(c[0], c[1], prm["E"]), f(c[0], c[1], prm["E2"])
    for i in (0, 1):
        if not _le(lo[i], hi[i], tol):
            return Outcome(False, hi[i], lo[i], f"R{i + 1}(E') >= R{i + 1}(E)")
    return Outcome(True)


def _claim_mono(f, c, prm, tol):
    i = prm["agent"]
    bigger = list(c)
    bigger[i] = prm["ci_new"]
    before = f(c[0], c[1], prm["E"])[i]
    after = f(bigger[0], bigger[1], prm["E"])[i]
    return Outcome(_le(before, after, tol), after, before, f"R{i + 1}(c') >= R{i + 1}(c)")


def _homogeneity(f, c, prm, tol):
    lam, E = prm["lam"], prm["E"]
    x = f(c[0], c[1], E)
    y = f(lam * c[0], lam * c[1], lam * E)
    for i in (0, 1):
        if not tol.close(y[i], lam * x[i]):
            return Outcome(False, y[i], lam * x[i], f"R{i + 1}(lc, lE) == l R{i + 1}(c, E)")
    return Outcome(True)


def _midpoint(f, c, prm, tol):
    x = f(c[0], c[1], (c[0] + c[1]) / 2)
    for i in (0, 1):
        if not tol.close(x[i], c[i] / 2):
            return Outcome(False, x[i], c[i] / 2, f"R{i + 1}(c, C/2) == c{i + 1}/2")
    return Outcome(True)


def _self_dual(f, c, prm, tol):
    E = prm["E"]
    x = f(c[0], c[1], E)
    y = f(c[0], c[1], c[0] + c[1] - E)
    for i in (0, 1):
        if not tol.close(x[i], c[i] - y[i]):
            return Outcome(False, x[i], c[i] - y[i], f"R{i + 1}(c, E) == c{i + 1} - R{i + 1}(c, C-E)")
    return Outcome(True)


def _interior(x, c, tol):
    return all(tol.abs < x[i] < c[i] - tol.abs for i in (0, 1))


def _rec(f, c, prm, tol):
    if prm.get("skipped"):
        return SKIP
    E, E2, lam = prm["E"], prm["E2"], prm["lam"]
    x, y = f(c[0], c[1], E), f(c[0], c[1], E2)
    if not (_interior(x, c, tol) and _interior(y, c, tol)):
        return SKIP
    z = f(c[0], c[1], lam * E + (1 - lam) * E2)
    for i in (0, 1):
        mix = lam * x[i] + (1 - lam) * y[i]
        if not tol.close(z[i], mix):
            return Outcome(False, z[i], mix, f"R{i + 1}(lE + (1-l)E') == l R{i + 1}(E) + (1-l) R{i + 1}(E')")
    return Outcome(True)


def _ratio_order(f, c, prm, tol, progressive):
    x = f(c[0], c[1], prm["E"])
    for i, j in _pairs(c):
        if c[i] <= 0:
            continue
        ri, rj = x[i] / c[i], x[j] / c[j]
        ok = _le(ri, rj, tol) if progressive else _le(rj, ri, tol)
        if not ok:
            op = "<=" if progressive else ">="
            return Outcome(False, ri, rj, f"R{i + 1}/c{i + 1} {op} R{j + 1}/c{j + 1}")
    return Outcome(True)


def _increments(f, c, prm, tol, concave):
    Es = (prm["E"], prm["E2"], prm["E3"])
    xs = [f(c[0], c[1], e) for e in Es]
    checked = False
    for i, j in _pairs(c):
        if c[i] <= 0:
            continue
        a, b = xs[1][j] - xs[0][j], xs[1][i] - xs[0][i]
        cc, d = xs[2][j] - xs[1][j], xs[2][i] - xs[1][i]
        if b < tol.abs or d < tol.abs:
            continue
        checked = True
        # a/b vs cc/d, cross-multiplied (b, d > 0); slack for increments each off by tol.abs
        slack = tol.abs * (abs(a) + abs(b) + abs(cc) + abs(d)) + tol.rel * (abs(a * d) + abs(cc * b))
        gap = a * d - cc * b
        ok = gap >= -slack if concave else gap <= slack
        if not ok:
            op = ">=" if concave else "<="
            return Outcome(False, a / b, cc / d, f"dR{j + 1}/dR{i + 1} first {op} second")
    return Outcome(True) if checked else SKIP


# ---------------------------------------------------------------- draws


def _draw_E(rng, c, f):
    return {"E": _uniform_E(rng, c)}


def _draw_two(rng, c, f):
    E, E2 = sorted(_uniform_E(rng, c) for _ in range(2))
    return {"E": E, "E2": E2}


def _draw_three(rng, c, f):
    E, E2, E3 = sorted(_uniform_E(rng, c) for _ in range(3))
    return {"E": E, "E2": E2, "E3": E3}


def _draw_claim_mono(rng, c, f):
    i = int(rng.integers(2))
    return {"agent": i, "ci_new": float(c[i] * rng.uniform(1.0, 2.0) + rng.uniform(0.0, 1.0)), "E": _uniform_E(rng, c)}


def _draw_homogeneity(rng, c, f):
    return {"lam": float(rng.choice(HOMOGENEITY_FACTORS)), "E": _uniform_E(rng, c)}


def _draw_none(rng, c, f):
    return {}


def _draw_rec(rng, c, f):
    lam = float(rng.choice(CONVEXITY_WEIGHTS))
    tol = DEFAULT_TOL
    for _ in range(REC_ATTEMPTS):
        E, E2 = (_uniform_E(rng, c) for _ in range(2))
        if E > 0 and E2 > 0 and _interior(f(c[0], c[1], E), c, tol) and _interior(f(c[0], c[1], E2), c, tol):
            return {"E": E, "E2": E2, "lam": lam}
    return {"skipped": True}


@dataclass(frozen=True)
class Axiom:
    id: AxiomId
    draw: Callable
    evaluate: Callable
    equal_claims: bool = False

    def check(self, f: RuleFn, c, params, tol: ToleranceConfig = DEFAULT_TOL) -> Outcome:
        return self.evaluate(f, c, params, tol)


AXIOMS: dict[AxiomId, Axiom] = {
    a.id: a
    for a in (
        Axiom(AxiomId.ETE, _draw_E, _ete, equal_claims=True),
        Axiom(AxiomId.OrderPres, _draw_E, _order_pres),
        Axiom(AxiomId.EndowMono, _draw_two, _endow_mono),
        Axiom(AxiomId.ClaimMono, _draw_claim_mono, _claim_mono),
        Axiom(AxiomId.Homogeneity, _draw_homogeneity, _homogeneity),
        Axiom(AxiomId.Midpoint, _draw_none, _midpoint),
        Axiom(AxiomId.SelfDual, _draw_E, _self_dual),
        Axiom(AxiomId.RestrEndowConvex, _draw_rec, _rec),
        Axiom(AxiomId.Progressivity, _draw_E, lambda f, c, p, t: _ratio_order(f, c, p, t, True)),
        Axiom(AxiomId.Regressivity, _draw_E, lambda f, c, p, t: _ratio_order(f, c, p, t, False)),
        Axiom(AxiomId.Concavity, _draw_three, lambda f, c, p, t: _increments(f, c, p, t, True)),
        Axiom(AxiomId.Convexity, _draw_three, lambda f, c, p, t: _increments(f, c, p, t, False)),
    )
}
