"""Which fairness properties survive the extension, and on which domain.

A property is tested on the base rules that satisfy it; the cell records the
widest domain on which all their extensions still pass.
"""

# %%
from claims_dilation.axioms import SampleSpec, compare_table1, preservation_matrix

matrix = preservation_matrix(spec=SampleSpec(seed=0, n=200))

# %%
for axiom, cell in matrix["cells"].items():
    bases = ", ".join(matrix["details"][axiom]["satisfying_bases"]) or "-"
    print(f"{axiom:<18} {cell:<4} (bases: {bases})")

print("mismatch with the reference pattern:", compare_table1(matrix))

# %% A violation comes with a certificate that can be replayed
rung = matrix["details"]["Midpoint"]["rungs"]["full"]
bid, rep = next((b, r) for b, r in rung.items() if r["verdict"] == "violated")
print(bid, rep["certificate"])
