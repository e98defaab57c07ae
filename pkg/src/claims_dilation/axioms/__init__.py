"""Axioms as executable predicates, the preservation table and the characterization suite."""

from .characterization import (
    InvalidWitness,
    characterization_suite,
    check_exclusion_axiom,
    check_full_exclusion,
    check_null_exclusion,
    check_prop_excl_invariance,
    replay_exclusion_certificate,
    replay_invariance_certificate,
)
from .independence import (
    INDEPENDENCE_RULES,
    DegenerateL,
    IndependenceRuleParams,
    independence_rule_1,
    independence_rule_2,
    independence_rule_3,
)
from .predicates import AXIOMS, EXCLUSION_AXIOMS, STANDARD_AXIOMS, AxiomId
from .preservation import TABLE1, compare_table1, preservation_matrix
from .sampling import (
    HOLDS,
    INCONCLUSIVE,
    VIOLATED,
    AxiomReport,
    InvalidSampleSpec,
    SampleSpec,
    check_axiom,
    replay_certificate,
)
