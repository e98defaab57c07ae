"""The three exclusion properties pin the extension down.

Each extended base rule passes all three; each of three hand-built rules
fails exactly one, so none of the properties is redundant.
"""

# %%
from claims_dilation import RULES
from claims_dilation.axioms import SampleSpec, characterization_suite, replay_exclusion_certificate
from claims_dilation.axioms.independence import INDEPENDENCE_RULES

spec = SampleSpec(seed=1, n=200)
suite = characterization_suite(RULES["cd"], spec)

# %%
for axiom, rep in suite["operator"].items():
    print(f"{suite['rule']:<28} {axiom:<20} {rep['verdict']}")
for name, row in suite["matrix"].items():
    print(f"{name:<28} " + "  ".join(f"{a}={v}" for a, v in row.items()))
print("pattern ok:", suite["pattern_ok"])

# %% Every recorded violation reproduces
for name, reports in suite["independence"].items():
    for axiom, rep in reports.items():
        if rep["verdict"] == "violated":
            print(name, axiom, "replays:", replay_exclusion_certificate(INDEPENDENCE_RULES[name], rep))
