# %% [markdown]
# # Checking the algebra behind the lower bound
#
# With A = lap log f and B = |grad log f|^2, the Gamma_2 integrand
# (A + B)(A + B/2) splits as a convex mix of a curvature-dimension form and
# a square, minus tau B^2. Each beta with 0 <= theta <= 1 and tau >= 0
# yields the lower bound 2d + (d-2)/(2 beta + 1).

# %%
import numpy as np

from gamma2sphere import verify as v

rng = np.random.default_rng(0)
A, B = rng.uniform(-10, 10, 10_000), rng.uniform(0, 10, 10_000)
for d in (2, 3, 5, 8):
    print(f"d={d}: max combination residual {np.max(v.combination_residual(d, -1.2, A, B)):.2e}")

# %%
for d in range(3, 9):
    lo, hi = v.beta_range(d)
    print(f"d={d}: beta in [{lo:.4f}, {hi:.4f}], best bound {v.lower_bound_from_beta(d, lo):.6f}"
          f" = d + 3 - 1/(d-1) = {d + 3 - 1 / (d - 1):.6f}")

# %% [markdown]
# The full suite also covers the manifold version and the 3x3 trace inequality,
# plus pointwise checks on random functions. Perturbing tau breaks it.

# %%
print(v.suite_json(v.run_suite(seed=0)))
print("perturbed passes:", v.suite_passed(v.run_suite(seed=0, perturb_tau=1e-3, n_random=500)))
