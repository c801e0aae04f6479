# %% [markdown]
# # Other searches for comparison
#
# Phase-pi/3 search cuts the error to eps**3 with one query, but every new
# recursion level costs three times as many queries. The simple
# single-ancilla scheme does better at large eps and worse at small eps.
# Classical pick-and-test is the baseline.

# %%
from fpsearch import algorithms as alg
from fpsearch import analytics as an
from fpsearch import experiments as ex

# %%
for eps in (0.2, 1 / 3, 0.5, 0.8):
    row = ex.figure1_row(eps)
    print(f"eps={eps:.3f} simple={row['simple_scheme']:.5f} pi/3={row['phase_pi3']:.5f}")

# %% [markdown]
# The two one-query curves cross at eps = 1/3.

# %%
for n in range(1, 5):
    err, queries = alg.run_phase_pi3(0.5, n)
    print(f"level {n}: {queries:>3} queries, error {err:.3e}")

# %% [markdown]
# Average query counts at q = 4. The fixed point search stops early, so
# it needs about half the queries Phase-pi/3 does. Pick-and-test gets 2q
# attempts to match the error.

# %%
table = ex.figure4_data(0.1, 4)
print(table.to_csv())

# %% [markdown]
# Planning for a target error: how many queries does each method need?

# %%
plan = an.plan_queries(0.5, 1e-4)
print(plan)
for q in range(2, 9):
    print(f"q={q} crossover eps_a={an.crossover_epsilon_a(q):.6f}")
