# %% [markdown]
# # Calculus on the sphere and exact quadrature
#
# Spherical derivatives come from ambient ones by projecting onto the
# tangent plane. Homogeneous harmonic polynomials of degree k are
# eigenfunctions of the Laplace-Beltrami operator with eigenvalue
# -k(d+k-2), which makes them a clean test of the projection formulas.

# %%
import numpy as np

from gamma2sphere.families import random_harmonic
from gamma2sphere.quadrature import gauss_z_rule, integrate_axisym, product_sphere_rule, integrate_sphere
from gamma2sphere.sphere_geometry import laplace_beltrami

rng = np.random.default_rng(0)
for d in (3, 4, 5):
    x = rng.standard_normal((5, d))
    x /= np.linalg.norm(x, axis=1)[:, None]
    for k in (2, 4):
        P = random_harmonic(k, d, (d, k))
        factor = laplace_beltrami(P, x) / P.value(x)
        print(f"d={d} k={k}: Laplacian / value = {np.round(factor, 10)}  expected {-k * (d + k - 2)}")

# %% [markdown]
# Functions of the last coordinate z only reduce to one-dimensional
# integrals against the weight (1 - z^2)^((d-3)/2). A Gauss rule for that
# weight integrates polynomials in z of degree up to 2n - 1 exactly. Both
# rules are normalised to total mass 1.

# %%
rule = gauss_z_rule(16, 3)
print("mean of z^2 on S^2:", integrate_axisym(lambda z: z**2, rule), "(exact 1/3)")
print("mean of z^4 on S^2:", integrate_axisym(lambda z: z**4, rule), "(exact 1/5)")

sph = product_sphere_rule(16, 32)
print("mean of x^2 y^2 on S^2:", integrate_sphere(lambda p: p[:, 0] ** 2 * p[:, 1] ** 2, sph), "(exact 1/15)")
