# %% [markdown]
# # Entropy dissipation along the heat flow
#
# In the even Legendre basis the heat flow on S^2 is diagonal:
# a_k(t) = a_k exp(-k(k+1) t). Entropy h and Fisher information i are then
# sampled along an exact solution and checked against dh/dt = -i and
# di/dt = -2 Gamma_2.

# %%
import numpy as np

from gamma2sphere import heatflow
from gamma2sphere.families import make_quartic

spec = heatflow.decompose(make_quartic(0.69214).profile, 8)
print("Legendre coefficients:", np.round(spec.coeffs, 12))

trace = heatflow.trace_flow(spec, np.linspace(0, 1, 6))
print(trace.to_csv())
print("monotone:", trace.is_monotone())

# %% [markdown]
# Central differences in time should be second order, so halving dt cuts
# the residuals by about four.

# %%
conv = heatflow.dissipation_convergence(spec, 0.1, 1e-4)
print({k: conv[k] for k in ("ratio_h", "ratio_i")})

# %% [markdown]
# If Gamma_2 >= Lambda i along the flow, then di/dt <= 2 Lambda dh/dt, and
# integrating to a time T where the flow has settled gives a nonnegative
# slack (i(0) - i(T))/2 - Lambda (h(0) - h(T)). At Lambda = 5.5 it holds;
# above the quartic's own log-Sobolev ratio it fails.

# %%
for lam in (5.5, 5.7, 5.95):
    s = heatflow.integrated_inequality(heatflow.decompose(make_quartic(0.757585).profile, 8), 5.0, lam)
    print(f"Lambda={lam}: slack={s:+.5f}")
