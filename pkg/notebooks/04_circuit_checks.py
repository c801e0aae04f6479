# %% [markdown]
# # Circuit-level checks
#
# We can postpone the ancilla-2 measurements to the end by giving every
# iteration a fresh ancilla and controlling the later gates on the earlier
# ancillas being 0. This yields the same outcome distribution.

# %%
from fpsearch import Variant, SearchConfig, run_deferred_measurement, run_fixed_point_exact
from fpsearch import experiments as ex

# %%
cfg = SearchConfig(0.3, 5)
a, b = run_deferred_measurement(cfg), run_fixed_point_exact(cfg)
print(a.exit_success)
print(b.exit_success)

# %% [markdown]
# Swapping the roles of the oracle outcomes moves the fixed point to eps = 1.
# The probability of landing on the target then becomes (1 - eps)**(2q+1).

# %%
for eps in (0.0, 0.5, 0.9):
    d = run_fixed_point_exact(SearchConfig(eps, 3, variant=Variant.AVOIDED_TARGET))
    print(eps, d.final_failure, (1 - eps) ** 7)

# %% [markdown]
# The verification matrix compares every closed form with its simulation
# over the full parameter grid. `fpsearch verify` runs the same check.

# %%
for name, residual in ex.verification_matrix().items():
    print(f"{name:<24}{residual:.2e}")
