# %% [markdown]
# # Sampled runs and explicit databases
#
# Sampled mode flips seeded coins along the measurement chain. Each trial
# draws from its own generator, so results do not depend on the worker count.

# %%
import math

from fpsearch import DatabaseSpec, SearchConfig, run_fixed_point_full
from fpsearch import experiments as ex

# %%
cfg = SearchConfig(0.5, 4, seed=7)
s = ex.monte_carlo_summary(cfg, 100_000, workers=4)
print(s)
print("expected success", 1 - 0.5**9, "expected mean queries", 1.984375)

# %% [markdown]
# A database with N items and M marked ones behaves exactly like the
# two-level model with eps = 1 - M/N. Moving the marked items around does not
# change anything.

# %%
for marked in [(0, 1, 2, 3), (3, 7, 11, 15), (12, 13, 14, 15)]:
    d = run_fixed_point_full(DatabaseSpec(16, marked), 3)
    print(marked, f"failure={d.final_failure:.6e}", f"queries={d.expected_queries:.6f}")
print("closed form failure", 0.75**7)

# %% [markdown]
# At small marked fractions f, about 1/(2f) iterations bring the error
# down to 1/e. That is linear in 1/f, with no square-root speedup.

# %%
for f, q, qf in ex.scaling_scan([2.0**-k for k in range(4, 11)]):
    print(f"f={f:.6f} q={q:>4} q*f={qf:.4f} grover~{math.pi / 4 / math.sqrt(f):.1f}")
