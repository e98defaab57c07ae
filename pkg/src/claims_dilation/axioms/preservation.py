"""Which standard axioms survive the operator, and on what domain."""

from __future__ import annotations

from typing import Any, Iterable

from ..core import DEFAULT_TOL, ToleranceConfig
from ..operator import extend
from ..rules import CLASSIC, Rule
from .predicates import STANDARD_AXIOMS, AxiomId
from .sampling import HOLDS, SampleSpec, check_axiom

YES, SYMMETRIC, EXCLUSION_SPACE, EXCL_ORDERED, NO = "Yes", "*", "†", "‡", "No"

# a cell gets the first rung on which every satisfying base is preserved
LADDER = (
    (YES, "full"),
    (SYMMETRIC, "symmetric"),
    (EXCLUSION_SPACE, "exclusion_space"),
    (EXCL_ORDERED, "exclusion_space+order_preserving"),
)

TABLE1 = {
    AxiomId.ETE: NO,
    AxiomId.OrderPres: NO,
    AxiomId.EndowMono: YES,
    AxiomId.ClaimMono: YES,
    AxiomId.Homogeneity: YES,
    AxiomId.Midpoint: SYMMETRIC,
    AxiomId.SelfDual: SYMMETRIC,
    AxiomId.RestrEndowConvex: EXCLUSION_SPACE,
    AxiomId.Progressivity: EXCL_ORDERED,
    AxiomId.Regressivity: EXCL_ORDERED,
    AxiomId.Concavity: EXCL_ORDERED,
    AxiomId.Convexity: EXCL_ORDERED,
}


def preservation_matrix(
    bases: Iterable[Rule] = CLASSIC,
    spec: SampleSpec = SampleSpec(),
    axioms: Iterable[AxiomId] = STANDARD_AXIOMS,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> dict[str, Any]:
    """Classify every axiom by the widest domain on which it is preserved.

    For each axiom, the bases satisfying it are found first; a rung counts
    only if every one of their extensions holds there.  Axioms satisfied by
    no base are marked "No".
    """
    bases = list(bases)
    extended = {b.id: extend(b) for b in bases}
    cells: dict[str, str] = {}
    details: dict[str, Any] = {}
    for axiom in axioms:
        axiom = AxiomId(axiom)
        base_reports = {b.id: check_axiom(b, axiom, spec.with_domain("full"), tol) for b in bases}
        satisfying = [b.id for b in bases if base_reports[b.id].verdict == HOLDS]
        cell, rungs = NO, {}
        for symbol, domain in LADDER if satisfying else ():
            reports = {bid: check_axiom(extended[bid], axiom, spec.with_domain(domain), tol) for bid in satisfying}
            rungs[domain] = {bid: r.to_dict() for bid, r in reports.items()}
            if all(r.verdict == HOLDS for r in reports.values()):
                cell = symbol
                break
        cells[axiom.value] = cell
        details[axiom.value] = {
            "satisfying_bases": satisfying,
            "base_verdicts": {bid: r.verdict for bid, r in base_reports.items()},
            "rungs": rungs,
        }
    return {"seed": spec.seed, "n": spec.n, "bases": [b.id for b in bases], "cells": cells, "details": details}


def compare_table1(matrix: dict[str, Any]) -> tuple[str, str, str] | None:
    """First (axiom, expected, got) that differs from the reference pattern, or None."""
    for axiom, want in TABLE1.items():
        got = matrix["cells"].get(axiom.value)
        if got is not None and got != want:
            return axiom.value, want, got
    return None
