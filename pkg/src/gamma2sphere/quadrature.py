"""
Quadrature against the normalised surface measure of S^{d-1}.

Axisymmetric integrands only see the marginal of ``z = sigma_d``, whose
density is proportional to ``(1 - z^2)^{(d-3)/2}`` on ``[-1, 1]``. The Gauss
rule for that weight (Legendre for d = 3, Chebyshev for d = 2, Gegenbauer
otherwise) integrates ``g(z)`` exactly up to degree ``2n - 1``.

For genuinely three-dimensional integrands on S^2 a product rule
(Gauss-Legendre in ``z`` times the trapezoidal rule in azimuth) is provided.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from .exceptions import QuadratureError

DEFAULT_Z_NODES = 64
DEFAULT_PRODUCT = (64, 128)


@dataclass(frozen=True)
class ZQuadrature:
    """Rule for the ``z``-marginal of the normalised measure on S^{d-1}."""

    nodes: np.ndarray
    weights: np.ndarray
    d: int

    @property
    def degree(self) -> int:
        """Highest polynomial degree in ``z`` integrated exactly."""
        return 2 * len(self.nodes) - 1

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class SphereQuadrature:
    """Rule on the full sphere S^{d-1}; points are unit vectors in R^d."""

    points: np.ndarray
    weights: np.ndarray
    d: int
    degree: int

    def __len__(self):
        return len(self.weights)


def gauss_z_rule(n: int = DEFAULT_Z_NODES, d: int = 3) -> ZQuadrature:
    """n-point Gauss rule for the normalised ``z``-marginal of S^{d-1}.

    Parameters
    ----------
    n : int
        Number of nodes, at least 2.
    d : int
        Ambient dimension, at least 2.

    Returns
    -------
    ZQuadrature
        Nodes sorted ascending, strictly inside (-1, 1), positive weights
        summing to one.
    """
    if n < 2:
        raise QuadratureError(f"need at least 2 nodes, got {n}")
    if d < 2:
        raise QuadratureError(f"ambient dimension must be at least 2, got {d}")
    if d == 2:
        # weight (1 - z^2)^{-1/2}: Gauss-Chebyshev, equal weights
        x, w = np.polynomial.chebyshev.chebgauss(n)
    elif d == 3:
        x, w = np.polynomial.legendre.leggauss(n)
    else:
        a = 0.5 * (d - 3)
        x, w = roots_jacobi(n, a, a)
    order = np.argsort(x)
    x = np.ascontiguousarray(x[order])
    w = np.ascontiguousarray(w[order])
    w = w / w.sum()
    x.setflags(write=False)
    w.setflags(write=False)
    return ZQuadrature(x, w, d)


def _checked(values, where) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise QuadratureError(f"integrand is not finite at node {where[i]!r} (value {values[i]})")
    return values


def integrate_axisym(g, rule: ZQuadrature) -> float:
    """Integrate ``g(z)`` against the normalised measure: ``sum_i w_i g(z_i)``.

    ``g`` is either a vectorised callable or an array of values at the nodes.
    """
    vals = g(rule.nodes) if callable(g) else g
    vals = np.broadcast_to(_checked(vals, rule.nodes), rule.nodes.shape)
    return float(np.sum(rule.weights * vals))


def product_sphere_rule(n_z: int = DEFAULT_PRODUCT[0], n_az: int = DEFAULT_PRODUCT[1]) -> SphereQuadrature:
    """Gauss-Legendre in ``z`` times uniform azimuth on S^2.

    Exact for spherical polynomials of total degree ``min(2 n_z - 1, n_az - 1)``.
    With even ``n_az`` the node set is closed under ``sigma -> -sigma``.
    """
    if n_z < 2:
        raise QuadratureError(f"n_z must be at least 2, got {n_z}")
    if n_az < 4:
        raise QuadratureError(f"n_az must be at least 4, got {n_az}")
    zr = gauss_z_rule(n_z, 3)
    az = 2.0 * np.pi * (np.arange(n_az) + 0.5) / n_az
    z = np.repeat(zr.nodes, n_az)
    phi = np.tile(az, n_z)
    rho = np.sqrt(1.0 - z * z)
    pts = np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    w = np.repeat(zr.weights, n_az) / n_az
    w = w / w.sum()
    pts.setflags(write=False)
    w.setflags(write=False)
    return SphereQuadrature(pts, w, 3, min(2 * n_z - 1, n_az - 1))


def integrate_sphere(g, rule: SphereQuadrature) -> float:
    """Integrate ``g(sigma)`` over the sphere: ``sum_i w_i g(sigma_i)``."""
    vals = g(rule.points) if callable(g) else g
    vals = _checked(vals, rule.points)
    return float(np.sum(rule.weights * vals))


def sphere_moment(exponents) -> float:
    """Exact ``int prod_i sigma_i^{a_i} dsigma`` over S^{d-1} (normalised).

    Zero if any exponent is odd; otherwise
    ``Gamma(d/2) prod_i Gamma((a_i+1)/2) / (pi^{d/2} Gamma((|a|+d)/2))``.
    Used as an independent oracle for the rules above.
    """
    from math import gamma, pi

    a = [int(e) for e in exponents]
    if any(e % 2 for e in a):
        return 0.0
    d = len(a)
    num = gamma(d / 2) * np.prod([gamma((e + 1) / 2) for e in a])
    return float(num / (pi ** (d / 2) * gamma((sum(a) + d) / 2)))
