"""
Fisher information, entropy, the Gamma_2 functional and their ratios.

Every functional is assembled from a handful of pointwise quantities
evaluated at the nodes of a quadrature rule (see :class:`NodeData`):

* ``A = lap_sigma log f`` and ``B = |grad_sigma log f|^2``,
* ``H2 = ||grad_sigma^2 log f||^2``,
* derivatives of ``f`` and ``sqrt(f)`` used for the alternative forms.

Derivatives of ``log f`` and ``sqrt f`` are obtained from the exact
derivatives of ``f`` by the chain rule; values of ``log f`` are never
differentiated numerically. Nothing is normalised to unit mass, so the
ratios are invariant under ``f -> c f``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import PositivityError, QuadratureError, UndefinedRatioError
from .quadrature import SphereQuadrature, ZQuadrature
from .sphere_geometry import (
    AxisymmetricProfile,
    axi_quantities,
    tangential_gradient,
    tangential_hessian,
)

POSITIVITY_FLOOR = 1e-10
RATIO_FLOOR = 1e-12
DEFICIT_FLOOR = 1e-14


class SymmetricPositiveFunction:
    """Base class for positive, antipodally symmetric functions on S^{d-1}.

    Subclasses provide exact jets. The axisymmetric route (``*_axisym``)
    works in the variable ``z``; the ambient route (``*_ambient``) works on
    points of R^d.
    """

    d: int
    axisymmetric: bool = False

    def jet_ambient(self, x):
        """``(F, grad F, Hess F)`` of an ambient extension at points ``x``."""
        raise NotImplementedError

    def log_jet_ambient(self, x):
        """``(log F, grad log F, Hess log F)`` at points ``x``."""
        F, g, H = self.jet_ambient(x)
        lg = g / F[:, None]
        lH = H / F[:, None, None] - lg[:, :, None] * lg[:, None, :]
        return np.log(F), lg, lH

    def jet_axisym(self, z):
        raise TypeError(f"{type(self).__name__} has no axisymmetric representation")

    def log_jet_axisym(self, z):
        raise TypeError(f"{type(self).__name__} has no axisymmetric representation")

    def scaled(self, c: float) -> "SymmetricPositiveFunction":
        """The function ``c * f`` for ``c > 0``."""
        raise NotImplementedError

    def __call__(self, sigma):
        x = np.atleast_2d(np.asarray(sigma, dtype=float))
        return self.jet_ambient(x)[0]


class AxisymmetricFunction(SymmetricPositiveFunction):
    """Positive function of ``z = sigma_d`` given by a profile.

    Parameters
    ----------
    profile : AxisymmetricProfile
        ``phi`` with exact derivatives; must be even in ``z``.
    log : bool
        If true the profile is ``log f`` (so ``f = exp(phi)``), otherwise
        it is ``f`` itself.
    """

    axisymmetric = True

    def __init__(self, profile: AxisymmetricProfile, log: bool = False):
        self.profile = profile
        self.log = log
        self.d = profile.d
        zs = np.linspace(0.0, 1.0, 33)
        a, b = profile.phi(zs), profile.phi(-zs)
        if np.max(np.abs(a - b)) > 1e-12 * max(1.0, np.max(np.abs(a))):
            raise ValueError("profile is not even in z; the function is not antipodally symmetric")

    def __repr__(self):
        kind = "log-density" if self.log else "density"
        return f"AxisymmetricFunction({kind}, d={self.d})"

    def jet_axisym(self, z):
        p, dp, ddp = self.profile.jet(z)
        if not self.log:
            return p, dp, ddp
        f = np.exp(p)
        return f, f * dp, f * (ddp + dp * dp)

    def log_jet_axisym(self, z):
        p, dp, ddp = self.profile.jet(z)
        if self.log:
            return p, dp, ddp
        q = dp / p
        return np.log(p), q, ddp / p - q * q

    def jet_ambient(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        n, d = x.shape
        f, df, ddf = self.jet_axisym(x[:, -1])
        g = np.zeros((n, d))
        g[:, -1] = df
        H = np.zeros((n, d, d))
        H[:, -1, -1] = ddf
        return f, g, H

    def log_jet_ambient(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=float))
        n, d = x.shape
        L, dL, ddL = self.log_jet_axisym(x[:, -1])
        g = np.zeros((n, d))
        g[:, -1] = dL
        H = np.zeros((n, d, d))
        H[:, -1, -1] = ddL
        return L, g, H

    def scaled(self, c):
        if c <= 0:
            raise ValueError("scale factor must be positive")
        p = self.profile
        if self.log:
            shift = float(np.log(c))
            prof = AxisymmetricProfile(lambda z: p.phi(z) + shift, p.dphi, p.ddphi, p.d)
        else:
            prof = AxisymmetricProfile(
                lambda z: c * p.phi(z), lambda z: c * p.dphi(z), lambda z: c * p.ddphi(z), p.d
            )
        return AxisymmetricFunction(prof, log=self.log)


@dataclass(frozen=True)
class NodeData:
    """Pointwise quantities of ``f`` at the nodes of one quadrature rule."""

    weights: np.ndarray
    f: np.ndarray
    logf: np.ndarray
    A: np.ndarray  # lap log f
    B: np.ndarray  # |grad log f|^2
    H2: np.ndarray  # ||Hess log f||^2
    grad_f_sq: np.ndarray
    grad_sqrt_sq: np.ndarray
    lap_sqrt: np.ndarray
    d: int

    def integrate(self, values) -> float:
        return float(np.sum(self.weights * values))


def _check_positive(f, where):
    fmax = np.max(f)
    fmin = np.min(f)
    if not np.all(np.isfinite(f)):
        raise QuadratureError("function is not finite at some quadrature node")
    if fmin <= 0 or fmin < POSITIVITY_FLOOR * fmax:
        i = int(np.argmin(f))
        raise PositivityError(
            f"f is not safely positive: min {fmin:.3e} at node {where[i]!r}, max {fmax:.3e}"
        )


def node_data(f: SymmetricPositiveFunction, rule) -> NodeData:
    """Evaluate the pointwise ingredients of every functional on ``rule``."""
    if isinstance(rule, ZQuadrature):
        if rule.d != f.d:
            raise ValueError(f"rule is for d={rule.d}, function for d={f.d}")
        z = rule.nodes
        phi, dphi, ddphi = f.jet_axisym(z)
        _check_positive(phi, z)
        L, dL, ddL = f.log_jet_axisym(z)
        B, A, H2 = axi_quantities(f.d, z, dL, ddL)
        grad_f_sq = (1.0 - z * z) * dphi**2
        s = np.sqrt(phi)
        ds = dphi / (2.0 * s)
        dds = ddphi / (2.0 * s) - dphi**2 / (4.0 * s**3)
        gs2, lap_s, _ = axi_quantities(f.d, z, ds, dds)
        return NodeData(rule.weights, phi, L, A, B, H2, grad_f_sq, gs2, lap_s, f.d)
    if isinstance(rule, SphereQuadrature):
        if rule.d != f.d:
            raise ValueError(f"rule is for d={rule.d}, function for d={f.d}")
        pts = rule.points
        F, g, H = f.jet_ambient(pts)
        _check_positive(F, pts)
        L, lg, lH = f.log_jet_ambient(pts)
        tg = tangential_gradient(pts, lg)
        th = tangential_hessian(pts, lg, lH)
        B = np.sum(tg * tg, axis=1)
        A = np.trace(th, axis1=1, axis2=2)
        H2 = np.sum(th * th, axis=(1, 2))
        tgf = tangential_gradient(pts, g)
        s = np.sqrt(F)
        gs = g / (2.0 * s[:, None])
        Hs = H / (2.0 * s[:, None, None]) - g[:, :, None] * g[:, None, :] / (4.0 * s**3)[:, None, None]
        tgs = tangential_gradient(pts, gs)
        lap_s = np.trace(tangential_hessian(pts, gs, Hs), axis1=1, axis2=2)
        return NodeData(
            rule.weights, F, L, A, B, H2, np.sum(tgf * tgf, axis=1), np.sum(tgs * tgs, axis=1), lap_s, f.d
        )
    raise TypeError(f"unsupported quadrature rule {type(rule).__name__}")


def _data(f, rule):
    return f if isinstance(f, NodeData) else node_data(f, rule)


def mass(f, rule=None) -> float:
    nd = _data(f, rule)
    return nd.integrate(nd.f)


def fisher_information(f, rule=None) -> tuple[float, float, float]:
    """Fisher information in its three equivalent forms.

    Returns ``(int f |grad log f|^2, int |grad f|^2 / f, 4 int |grad sqrt f|^2)``;
    the first is the canonical value.
    """
    nd = _data(f, rule)
    return (
        nd.integrate(nd.f * nd.B),
        nd.integrate(nd.grad_f_sq / nd.f),
        4.0 * nd.integrate(nd.grad_sqrt_sq),
    )


def entropy(f, rule=None) -> float:
    """``int f log f dsigma`` (``f`` is not normalised)."""
    nd = _data(f, rule)
    return nd.integrate(nd.f * nd.logf)


def entropy_deficit(f, rule=None) -> float:
    """``int f log f - m log m`` with ``m = int f``, evaluated without cancellation.

    Uses ``int m * phi(f/m)`` with ``phi(x) = x log x - x + 1 >= 0``, which is
    the same quantity because ``int (f - m) = 0``.
    """
    nd = _data(f, rule)
    m = nd.integrate(nd.f)
    u = nd.f / m - 1.0
    phi = (1.0 + u) * np.log1p(u) - u
    return m * nd.integrate(phi)


def gamma2_functional(f, rule=None) -> tuple[float, float]:
    """``int f Gamma_2(log f, log f)`` directly and in the Bochner form.

    The direct form is ``int f (||Hess log f||^2 + (d-2)|grad log f|^2)``; the
    Bochner form is ``int f (A + B)(A + B/2)``. They agree after integration
    by parts, not pointwise.
    """
    nd = _data(f, rule)
    direct = nd.integrate(nd.f * (nd.H2 + (nd.d - 2) * nd.B))
    bochner = nd.integrate(nd.f * (nd.A + nd.B) * (nd.A + 0.5 * nd.B))
    return direct, bochner


def sqrt_laplacian_sq(f, rule=None) -> float:
    """``int (lap_sigma sqrt f)^2 dsigma``."""
    nd = _data(f, rule)
    return nd.integrate(nd.lap_sqrt**2)


def _fisher_checked(nd) -> float:
    fi = nd.integrate(nd.f * nd.B)
    m = nd.integrate(nd.f)
    if fi <= RATIO_FLOOR * m:
        raise UndefinedRatioError(
            f"undefined ratio: Fisher information {fi:.3e} vanishes (constant function)"
        )
    return fi


def gamma2_ratio(f, rule=None) -> float:
    """``int f Gamma_2(log f, log f) / i(f)``; an upper bound certificate for Lambda_d."""
    nd = _data(f, rule)
    fi = _fisher_checked(nd)
    return gamma2_functional(nd)[0] / fi


def log_sobolev_ratio(f, rule=None) -> float:
    """``i(f) / (2 [h(f) - m log m])``; an upper bound certificate for alpha_d."""
    nd = _data(f, rule)
    dfc = entropy_deficit(nd)
    m = nd.integrate(nd.f)
    if dfc <= DEFICIT_FLOOR * m:
        raise UndefinedRatioError(f"undefined ratio: entropy deficit {dfc:.3e} vanishes (constant function)")
    return nd.integrate(nd.f * nd.B) / (2.0 * dfc)


def poincare_ratio(g, rule) -> float:
    """``int |grad g|^2 / (int g^2 - (int g)^2)`` for a function ``g`` on the sphere.

    ``g`` may be an :class:`AxisymmetricProfile` (with a ``ZQuadrature`` or a
    ``SphereQuadrature``), an ambient function with ``value/gradient`` (with a
    ``SphereQuadrature``), or a :class:`SymmetricPositiveFunction`, in which
    case ``sqrt f`` is used.
    """
    if isinstance(g, SymmetricPositiveFunction):
        nd = node_data(g, rule)
        vals = np.sqrt(nd.f)
        grad_sq = nd.grad_sqrt_sq
        w = nd.weights
    elif isinstance(g, AxisymmetricProfile) and isinstance(rule, ZQuadrature):
        z = rule.nodes
        vals = g.phi(z)
        grad_sq = (1.0 - z * z) * g.dphi(z) ** 2
        w = rule.weights
    else:
        if not isinstance(rule, SphereQuadrature):
            raise TypeError("ambient functions need a SphereQuadrature")
        F = g.to_ambient() if isinstance(g, AxisymmetricProfile) else g
        pts = rule.points
        vals = F.value(pts)
        tg = tangential_gradient(pts, F.gradient(pts))
        grad_sq = np.sum(tg * tg, axis=1)
        w = rule.weights
    mean = np.sum(w * vals)
    var = np.sum(w * (vals - mean) ** 2)
    if var <= RATIO_FLOOR * max(1.0, mean * mean):
        raise UndefinedRatioError("undefined ratio: g is constant")
    return float(np.sum(w * grad_sq) / var)


@dataclass(frozen=True)
class FunctionalReport:
    """All functionals of one function on one rule."""

    mass: float
    fisher: float
    entropy: float
    gamma2_direct: float
    gamma2_bochner: float
    hsq: float
    gamma2_ratio: float
    log_sobolev_ratio: float
    poincare_ratio_sqrtf: float

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def functional_report(f: SymmetricPositiveFunction, rule) -> FunctionalReport:
    """Evaluate every functional of ``f``; raises for constant ``f``."""
    nd = node_data(f, rule)
    direct, bochner = gamma2_functional(nd)
    return FunctionalReport(
        mass=mass(nd),
        fisher=fisher_information(nd)[0],
        entropy=entropy(nd),
        gamma2_direct=direct,
        gamma2_bochner=bochner,
        hsq=sqrt_laplacian_sq(nd),
        gamma2_ratio=gamma2_ratio(nd),
        log_sobolev_ratio=log_sobolev_ratio(nd),
        poincare_ratio_sqrtf=poincare_ratio(f, rule),
    )
