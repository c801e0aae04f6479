# %% [markdown]
# # How the failure probability shrinks
#
# The two-ancilla search never overshoots: whatever the initial error
# probability, each iteration multiplies it by the same contraction factor.
# This script runs the exact branch tree and compares it with the
# closed form.

# %%
import numpy as np

from fpsearch import SearchConfig, run_fixed_point_exact
from fpsearch import analytics as an

# %%
for eps in (0.1, 0.5, 0.9, 0.99):
    fails = [run_fixed_point_exact(SearchConfig(eps, q)).final_failure for q in range(1, 6)]
    print(f"eps={eps:<5}", " ".join(f"{f:.3e}" for f in fails))

# %% [markdown]
# With the ancilla-1 rotation at r = 1/2, the failure probability after q
# iterations is eps**(2q+1). Other values of r change the contraction factor.

# %%
eps = np.linspace(0.05, 0.95, 7)
for r in (0.25, 0.5, 0.75, 1.0):
    sim = np.array([run_fixed_point_exact(SearchConfig(float(e), 3, r)).final_failure for e in eps])
    formula = np.array([an.error_after(float(e), r, 3) for e in eps])
    print(f"r={r:<5} max |sim - formula| = {np.max(np.abs(sim - formula)):.1e}")

# %% [markdown]
# A single run can also stop early: ancilla 2 reads 1 exactly when the
# oracle fires. The distribution records where the success probability comes from.

# %%
d = run_fixed_point_exact(SearchConfig(0.5, 4))
print("exit at iteration k:", [round(p, 6) for p in d.exit_success])
print("success at the end: ", d.final_success)
print("failure:            ", d.final_failure)
print("expected queries:   ", d.expected_queries)
