# %% [markdown]
# # Random symmetric test functions
#
# Random even polynomials, used either as log f or as f - 1, give a
# sandwich check: no ratio should fall below the proven lower bound 5.5,
# and the smallest ones should come close to the quartic's 5.739.
# Pure quadratics reach the lowest values.

# %%
from gamma2sphere.search import random_search

summary = random_search(seed=0, count=200)
print(summary.to_json())
print(f"accepted {summary.accepted}, min ratio {summary.min_ratio:.5f}, below 6: {summary.below_six}")
