"""
Spherical calculus on S^{d-1} embedded in R^d.

Functions on the sphere are handled in two ways:

* as an ambient extension ``F`` on R^d with exact gradient and Hessian, from
  which the spherical gradient, Hessian and Laplace-Beltrami value follow by
  tangential projection;
* as an axisymmetric profile ``phi(z)`` of the last coordinate ``z = sigma_d``,
  for which the same quantities reduce to closed forms in ``z``.

Both routes accept a single point of shape ``(d,)`` or a stack of points of
shape ``(N, d)`` and are vectorised over the leading axis.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Protocol

import numpy as np

UNIT_TOL = 1e-12


class AmbientFunction(Protocol):
    """Anything with exact ``value``, ``gradient`` and ``hessian`` on R^d.

    ``value(x)`` maps ``(N, d) -> (N,)``, ``gradient(x)`` maps
    ``(N, d) -> (N, d)`` and ``hessian(x)`` maps ``(N, d) -> (N, d, d)``.
    """

    def value(self, x: np.ndarray) -> np.ndarray: ...

    def gradient(self, x: np.ndarray) -> np.ndarray: ...

    def hessian(self, x: np.ndarray) -> np.ndarray: ...


def as_sphere_points(sigma, d: int | None = None) -> np.ndarray:
    """Validate unit vectors and return them as an ``(N, d)`` array."""
    pts = np.atleast_2d(np.asarray(sigma, dtype=float))
    if pts.ndim != 2:
        raise ValueError(f"expected points of shape (N, d), got {pts.shape}")
    if pts.shape[1] < 2:
        raise ValueError("ambient dimension d must be at least 2")
    if d is not None and pts.shape[1] != d:
        raise ValueError(f"dimension mismatch: points have d={pts.shape[1]}, expected {d}")
    norms = np.linalg.norm(pts, axis=1)
    bad = np.abs(norms - 1.0) > UNIT_TOL
    if np.any(bad):
        raise ValueError(f"point {pts[np.argmax(bad)]} is not on the unit sphere")
    return pts


def _squeeze_like(sigma, out):
    return out[0] if np.ndim(sigma) == 1 else out


def tangent_projector(sigma) -> np.ndarray:
    """``P = I - sigma sigma^T`` for each point, shape ``(N, d, d)``."""
    pts = as_sphere_points(sigma)
    d = pts.shape[1]
    return np.eye(d)[None, :, :] - pts[:, :, None] * pts[:, None, :]


def project_tangent(sigma, v) -> np.ndarray:
    """Remove the normal component of ``v`` at ``sigma``: ``v - (sigma . v) sigma``."""
    pts = as_sphere_points(sigma)
    vec = np.atleast_2d(np.asarray(v, dtype=float))
    if vec.shape[-1] != pts.shape[1]:
        raise ValueError(
            f"dimension mismatch: point has d={pts.shape[1]}, vector has {vec.shape[-1]}"
        )
    vec = np.broadcast_to(vec, pts.shape)
    out = vec - np.sum(pts * vec, axis=1)[:, None] * pts
    return _squeeze_like(sigma, out)


def tangential_gradient(sigma: np.ndarray, grad: np.ndarray) -> np.ndarray:
    """Spherical gradient from an ambient gradient already evaluated at ``sigma``."""
    return grad - np.sum(sigma * grad, axis=1)[:, None] * sigma


def tangential_hessian(sigma: np.ndarray, grad: np.ndarray, hess: np.ndarray) -> np.ndarray:
    """Spherical Hessian ``P H P - (sigma . grad) P`` from ambient derivatives."""
    d = sigma.shape[1]
    proj = np.eye(d)[None, :, :] - sigma[:, :, None] * sigma[:, None, :]
    radial = np.sum(sigma * grad, axis=1)
    return proj @ hess @ proj - radial[:, None, None] * proj


def spherical_gradient(F: AmbientFunction, sigma) -> np.ndarray:
    """Spherical gradient of ``F`` restricted to the sphere."""
    pts = as_sphere_points(sigma)
    return _squeeze_like(sigma, tangential_gradient(pts, F.gradient(pts)))


def spherical_hessian(F: AmbientFunction, sigma) -> np.ndarray:
    """Covariant Hessian of ``F`` restricted to the sphere, as a ``d x d`` matrix.

    The result is symmetric, annihilates ``sigma`` and acts on the tangent
    space only, so its rank is at most ``d - 1``.
    """
    pts = as_sphere_points(sigma)
    out = tangential_hessian(pts, F.gradient(pts), F.hessian(pts))
    return _squeeze_like(sigma, out)


def laplace_beltrami(F: AmbientFunction, sigma) -> np.ndarray:
    """Laplace-Beltrami value of ``F`` on the sphere (trace of the spherical Hessian)."""
    hs = spherical_hessian(F, sigma)
    return np.trace(hs, axis1=-2, axis2=-1)


def laplace_beltrami_radial(F: AmbientFunction, sigma) -> np.ndarray:
    """Same quantity as :func:`laplace_beltrami` via the radial decomposition.

    ``lap_sigma F = lap F - sigma^T H sigma - (d - 1) sigma . grad F``.
    """
    pts = as_sphere_points(sigma)
    d = pts.shape[1]
    grad = F.gradient(pts)
    hess = F.hessian(pts)
    out = (
        np.trace(hess, axis1=1, axis2=2)
        - np.einsum("ni,nij,nj->n", pts, hess, pts)
        - (d - 1) * np.sum(pts * grad, axis=1)
    )
    return _squeeze_like(sigma, out)


class Polynomial:
    """Multivariate polynomial on R^d with exact derivatives.

    Parameters
    ----------
    exponents : array_like, shape (M, d)
        Non-negative integer exponent of each coordinate in each monomial.
    coeffs : array_like, shape (M,)
        Coefficient of each monomial.
    """

    def __init__(self, exponents, coeffs):
        self.exponents = np.atleast_2d(np.asarray(exponents, dtype=int))
        self.coeffs = np.asarray(coeffs, dtype=float).reshape(-1)
        if self.exponents.shape[0] != self.coeffs.shape[0]:
            raise ValueError("one coefficient per monomial is required")
        if np.any(self.exponents < 0):
            raise ValueError("exponents must be non-negative")
        self.d = self.exponents.shape[1]

    def __repr__(self):
        return f"Polynomial(d={self.d}, terms={len(self.coeffs)})"

    @classmethod
    def monomial_basis(cls, d: int, degrees) -> np.ndarray:
        """Exponent rows of every monomial of the given total degrees."""
        rows = []
        for deg in degrees:
            for combo in combinations_with_replacement(range(d), deg):
                e = np.zeros(d, dtype=int)
                for i in combo:
                    e[i] += 1
                rows.append(e)
        return np.array(rows, dtype=int).reshape(-1, d)

    @classmethod
    def from_dict(cls, terms: dict, d: int) -> "Polynomial":
        """Build from ``{exponent_tuple: coefficient}``."""
        if not terms:
            return cls(np.zeros((1, d), dtype=int), [0.0])
        exps, cs = zip(*terms.items())
        return cls(np.array(exps, dtype=int).reshape(-1, d), cs)

    @property
    def degrees(self) -> np.ndarray:
        return self.exponents.sum(axis=1)

    def is_even(self) -> bool:
        return bool(np.all(self.degrees[self.coeffs != 0] % 2 == 0))

    def _derivative_table(self):
        # every derivative up to order 2 as coefficients over one shared monomial set
        if getattr(self, "_table", None) is None:
            d = self.d
            cols = [(self.exponents, self.coeffs)]
            for i in range(d):
                e = self.exponents.copy()
                e[:, i] -= 1
                cols.append((e, self.exponents[:, i] * self.coeffs))
            for i in range(d):
                for j in range(d):
                    e = self.exponents.copy()
                    e[:, i] -= 1
                    e[:, j] -= 1
                    k = self.exponents[:, i] * (self.exponents[:, j] - (i == j))
                    cols.append((e, k * self.coeffs))
            allexp = np.vstack([np.maximum(e, 0) for e, _ in cols])
            uniq, inv = np.unique(allexp, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            C = np.zeros((len(uniq), len(cols)))
            m = len(self.coeffs)
            for c, (_, k) in enumerate(cols):
                np.add.at(C[:, c], inv[c * m:(c + 1) * m], k)
            self._table = (uniq, C)
        return self._table

    def jet(self, x):
        """Value, gradient and Hessian at the rows of ``x``."""
        x = np.atleast_2d(np.asarray(x, dtype=float))
        n, d = x.shape
        uniq, C = self._derivative_table()
        kmax = int(uniq.max(initial=0))
        table = np.ones((n, d, kmax + 1))
        for k in range(1, kmax + 1):
            table[:, :, k] = table[:, :, k - 1] * x
        mono = np.prod(table[:, np.arange(d)[None, :], uniq], axis=2)
        out = mono @ C
        return out[:, 0], out[:, 1:1 + d], out[:, 1 + d:].reshape(n, d, d)

    def value(self, x) -> np.ndarray:
        return self.jet(x)[0]

    def gradient(self, x) -> np.ndarray:
        return self.jet(x)[1]

    def hessian(self, x) -> np.ndarray:
        return self.jet(x)[2]

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        terms: dict = {}
        for ea, ca in zip(self.exponents, self.coeffs):
            for eb, cb in zip(other.exponents, other.coeffs):
                key = tuple(ea + eb)
                terms[key] = terms.get(key, 0.0) + ca * cb
        return Polynomial.from_dict(terms, self.d)


@dataclass(frozen=True)
class AxisymmetricProfile:
    """A function of ``z = sigma_d`` given with its first two derivatives."""

    phi: Callable[[np.ndarray], np.ndarray]
    dphi: Callable[[np.ndarray], np.ndarray]
    ddphi: Callable[[np.ndarray], np.ndarray]
    d: int = 3

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("ambient dimension d must be at least 2")

    def jet(self, z):
        z = np.asarray(z, dtype=float)
        return self.phi(z), self.dphi(z), self.ddphi(z)

    def to_ambient(self) -> "AxisymmetricExtension":
        return AxisymmetricExtension(self)

    @classmethod
    def polynomial(cls, coeffs, d: int = 3) -> "AxisymmetricProfile":
        """Profile from power-series coefficients ``c_0 + c_1 z + ...``."""
        p = np.polynomial.Polynomial(coeffs)
        dp, ddp = p.deriv(1), p.deriv(2)
        return cls(p, dp, ddp, d)


class AxisymmetricExtension:
    """The ambient extension ``F(x) = phi(x_d)`` of an axisymmetric profile."""

    def __init__(self, profile: AxisymmetricProfile):
        self.profile = profile
        self.d = profile.d

    def value(self, x):
        x = np.atleast_2d(x)
        return self.profile.phi(x[:, -1])

    def gradient(self, x):
        x = np.atleast_2d(x)
        out = np.zeros_like(x, dtype=float)
        out[:, -1] = self.profile.dphi(x[:, -1])
        return out

    def hessian(self, x):
        x = np.atleast_2d(x)
        n, d = x.shape
        out = np.zeros((n, d, d))
        out[:, -1, -1] = self.profile.ddphi(x[:, -1])
        return out


def _check_z(z):
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > 1.0):
        raise ValueError("z must lie in [-1, 1]")
    return z


def axi_gradient_sq(prof: AxisymmetricProfile, z) -> np.ndarray:
    """``|grad_sigma f|^2 = (1 - z^2) phi'(z)^2``."""
    z = _check_z(z)
    return (1.0 - z * z) * prof.dphi(z) ** 2


def axi_laplacian(prof: AxisymmetricProfile, z) -> np.ndarray:
    """``lap_sigma f = (1 - z^2) phi'' - (d - 1) z phi'``."""
    z = _check_z(z)
    return (1.0 - z * z) * prof.ddphi(z) - (prof.d - 1) * z * prof.dphi(z)


def axi_hessian_norm_sq(prof: AxisymmetricProfile, z) -> np.ndarray:
    """Squared Frobenius norm of the spherical Hessian of an axisymmetric function.

    The Hessian has eigenvalue ``(1 - z^2) phi'' - z phi'`` along the meridian
    and ``-z phi'`` with multiplicity ``d - 2`` along the latitudes.
    """
    z = _check_z(z)
    dp = prof.dphi(z)
    meridian = (1.0 - z * z) * prof.ddphi(z) - z * dp
    return meridian**2 + (prof.d - 2) * (z * dp) ** 2


def axi_quantities(d: int, z, dphi, ddphi):
    """``(|grad|^2, laplacian, |Hessian|^2)`` from derivative arrays at ``z``.

    Array-level form of the three ``axi_*`` reductions, used by the
    functionals where derivative values are already at hand.
    """
    s = 1.0 - z * z
    zd = z * dphi
    meridian = s * ddphi - zd
    return s * dphi**2, s * ddphi - (d - 1) * zd, meridian**2 + (d - 2) * zd**2
