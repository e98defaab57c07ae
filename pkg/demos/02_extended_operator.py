"""Extending a rule with exclusion thresholds.

Below L everyone gets a share of their lower exclusion; above U everyone
gets their upper exclusion plus a share of what remains.  In between the
base rule runs on a rescaled box.
"""

# %%
import numpy as np

from claims_dilation import CLOSED_FORMS, RULES, ExtendedProblem, apply_operator, extended_breakpoints, operator_trace

lower, upper = (0.0, 0.2), (1.0, 0.6)
ep = ExtendedProblem.of(16.0, 10.0, 0.0, lower, upper)
print(f"L = {ep.L}, U = {ep.U}, s = {ep.s}")

# %% Which stage handles which endowment
for E in (1.0, 2.0, 9.0, 22.0, 24.0):
    x, trace = operator_trace(RULES["cea"], ep.with_endowment(E))
    print(f"E = {E:5.1f}  stage = {trace.stage:<15} x = ({x[0]:.4f}, {x[1]:.4f})")

# %% Generic solver versus the closed-form expressions
rng = np.random.default_rng(7)
worst = 0.0
for E in rng.uniform(0.0, ep.C, 200):
    q = ep.with_endowment(float(E))
    for rid, closed in CLOSED_FORMS.items():
        a, b = closed(q), apply_operator(RULES[rid], q)
        worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
print("largest closed-form/solver gap:", worst)

# %% Where the extended paths bend
for rid in ("p", "cea", "cel", "cd", "rt"):
    print(rid, extended_breakpoints(RULES[rid], ep))
