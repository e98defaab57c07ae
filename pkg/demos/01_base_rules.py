"""Two-agent division rules on a small bankruptcy problem.

Each rule is computed twice: directly, and by walking its path of awards.
"""

# %%
import numpy as np

from claims_dilation import RULES, ClaimsProblem, allocate_from_path

claims = (16.0, 10.0)

# %% One problem, every rule
p = ClaimsProblem(*claims, 13.0)
for rule in RULES.values():
    x = rule.allocate(p)
    print(f"{rule.id:>4}  x = ({x[0]:7.4f}, {x[1]:7.4f})   path route = {tuple(round(v, 4) for v in allocate_from_path(rule, p))}")

# %% Award paths as the endowment grows
grid = np.linspace(0.0, sum(claims), 14)
for rid in ("cea", "cel", "cd", "rt"):
    rule = RULES[rid]
    awards = np.array([tuple(rule.allocate(ClaimsProblem(*claims, E))) for E in grid])
    print(rid, "agent 2 awards:", np.round(awards[:, 1], 3))

# %% Kinks: where the path of awards bends
for rid in ("cea", "cel", "cd", "rt"):
    print(rid, "kinks in agent 1's award:", RULES[rid].kinks(p))
