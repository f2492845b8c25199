"""
Heat flow of axisymmetric symmetric functions on S^2 in the Legendre basis.

A band-limited even profile ``f(z) = sum_k a_k P_k(z)`` (``k`` even) evolves
under ``d/dt f = lap_sigma f`` as ``a_k(t) = a_k exp(-k(k+1) t)``, so the
flow is exact and quadrature is the only source of error in the monitored
functionals.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import legendre as L

from . import functionals as fn
from .exceptions import PositivityError, ResolutionError
from .functionals import AxisymmetricFunction
from .quadrature import ZQuadrature, gauss_z_rule
from .sphere_geometry import AxisymmetricProfile

RESOLUTION_TOL = 1e-10
SYMMETRY_TOL = 1e-12
FLOW_POSITIVITY = 1e-12
DECAY_THRESHOLD = 1e-8


@dataclass(frozen=True)
class LegendreSpectrum:
    """Coefficients ``a_0, a_2, ..., a_K`` of an even Legendre series on S^2."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        if c.size < 1:
            raise ValueError("spectrum needs at least a_0")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def K(self) -> int:
        return 2 * (len(self.coeffs) - 1)

    @property
    def degrees(self) -> np.ndarray:
        return 2 * np.arange(len(self.coeffs))

    def legendre_coeffs(self) -> np.ndarray:
        """Dense Legendre coefficients indexed by degree (odd ones zero)."""
        full = np.zeros(self.K + 1)
        full[::2] = self.coeffs
        return full

    def __call__(self, z):
        return L.legval(z, self.legendre_coeffs())

    def profile(self) -> AxisymmetricProfile:
        series = np.polynomial.Legendre(self.legendre_coeffs())
        return AxisymmetricProfile(series, series.deriv(1), series.deriv(2), 3)

    def function(self) -> AxisymmetricFunction:
        return AxisymmetricFunction(self.profile())

    def min_value(self) -> float:
        """Minimum over a dense grid of ``[-1, 1]`` including the poles."""
        n = max(64, 4 * self.K + 1)
        z = np.concatenate([[-1.0, 0.0, 1.0], np.cos(np.pi * (np.arange(n) + 0.5) / n)])
        return float(np.min(self(z)))


def _default_rule(K):
    return gauss_z_rule(max(64, K + 1), 3)


def decompose(prof: AxisymmetricProfile, K: int, rule: ZQuadrature | None = None) -> LegendreSpectrum:
    """Project an even profile onto ``P_0, P_2, ..., P_K``.

    ``a_k = (2k + 1) int f P_k dsigma``. Raises :class:`ResolutionError` if
    the truncated series does not reproduce ``f`` at the nodes, and
    ``ValueError`` if ``f`` has odd components.
    """
    if K < 2 or K % 2:
        raise ValueError(f"K must be even and at least 2, got {K}")
    rule = rule if rule is not None else _default_rule(K)
    if rule.d != 3:
        raise ValueError("the Legendre heat flow is implemented for d = 3 only")
    if rule.degree < 2 * K:
        raise ValueError(f"rule of degree {rule.degree} cannot resolve degree-{K} projections")
    z, w = rule.nodes, rule.weights
    vals = prof.phi(z)
    basis = L.legvander(z, K)  # (n, K+1)
    proj = (2 * np.arange(K + 1) + 1) * ((w * vals) @ basis)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.max(np.abs(proj[1::2])) > SYMMETRY_TOL * scale:
        raise ValueError("profile has odd Legendre components; it is not antipodally symmetric")
    proj[1::2] = 0.0
    err = np.max(np.abs(basis @ proj - vals))
    if err > RESOLUTION_TOL * scale:
        raise ResolutionError(f"degree {K} leaves reconstruction error {err:.3e}")
    return LegendreSpectrum(proj[::2])


def evolve(spec: LegendreSpectrum, t: float) -> LegendreSpectrum:
    """Exact heat-flow solution at time ``t``: ``a_k exp(-k(k+1) t)``."""
    if t < 0:
        raise ValueError("time must be non-negative")
    k = spec.degrees
    out = LegendreSpectrum(spec.coeffs * np.exp(-k * (k + 1) * t))
    a0 = spec.coeffs[0]
    if not out.min_value() > FLOW_POSITIVITY * a0:
        raise PositivityError(f"evolved function is not positive at t={t}")
    return out


@dataclass(frozen=True)
class FlowTrace:
    """Functionals recorded along a heat flow."""

    times: np.ndarray
    mass: np.ndarray
    entropy: np.ndarray
    fisher: np.ndarray
    gamma2: np.ndarray
    columns: tuple = field(default=("time", "mass", "entropy", "fisher", "gamma2"), repr=False)

    def rows(self):
        return zip(self.times, self.mass, self.entropy, self.fisher, self.gamma2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(self.columns)
        for row in self.rows():
            wr.writerow([f"{v:.17g}" for v in row])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "time": self.times.tolist(),
            "mass": self.mass.tolist(),
            "entropy": self.entropy.tolist(),
            "fisher": self.fisher.tolist(),
            "gamma2": self.gamma2.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def is_monotone(self, slack: float = 1e-10) -> bool:
        """Entropy and Fisher information nonincreasing up to ``slack``."""
        return bool(np.all(np.diff(self.entropy) <= slack) and np.all(np.diff(self.fisher) <= slack))


def _functionals(spec, rule):
    nd = fn.node_data(spec.function(), rule)
    return fn.mass(nd), fn.entropy(nd), fn.fisher_information(nd)[0], fn.gamma2_functional(nd)[0]


def trace_flow(spec: LegendreSpectrum, times, rule: ZQuadrature | None = None) -> FlowTrace:
    """Evaluate mass, entropy, Fisher information and Gamma_2 at each time."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0 or times[0] != 0 or np.any(np.diff(times) < 0):
        raise ValueError("times must be sorted ascending and start at 0")
    rule = rule if rule is not None else _default_rule(spec.K)
    vals = np.array([_functionals(evolve(spec, t), rule) for t in times])
    return FlowTrace(times, vals[:, 0], vals[:, 1], vals[:, 2], vals[:, 3])


def check_dissipation(spec: LegendreSpectrum, t: float, dt: float = 1e-5, rule=None) -> tuple[float, float]:
    """Central-difference residuals of ``dh/dt = -i`` and ``di/dt = -2 Gamma_2`` at ``t``."""
    if dt <= 0 or t < dt:
        raise ValueError("need 0 < dt <= t")
    rule = rule if rule is not None else _default_rule(spec.K)
    _, hp, ip, _ = _functionals(evolve(spec, t + dt), rule)
    _, hm, im, _ = _functionals(evolve(spec, t - dt), rule)
    _, _, i0, g0 = _functionals(evolve(spec, t), rule)
    res_h = abs((hp - hm) / (2.0 * dt) + i0)
    res_i = abs((ip - im) / (2.0 * dt) + 2.0 * g0)
    return res_h, res_i


def dissipation_convergence(spec: LegendreSpectrum, t: float, dt: float = 1e-4, rule=None) -> dict:
    """Residuals at ``dt`` and ``dt/2`` and their ratios (about 4 for a second-order check)."""
    rh1, ri1 = check_dissipation(spec, t, dt, rule)
    rh2, ri2 = check_dissipation(spec, t, dt / 2.0, rule)
    return {
        "dt": dt,
        "residual_h": [rh1, rh2],
        "residual_i": [ri1, ri2],
        "ratio_h": rh1 / rh2 if rh2 > 0 else float("inf"),
        "ratio_i": ri1 / ri2 if ri2 > 0 else float("inf"),
    }


def integrated_inequality(spec: LegendreSpectrum, T: float, Lambda: float, rule=None) -> float:
    """Slack ``(i(0) - i(T))/2 - Lambda (h(0) - h(T))`` of the integrated dissipation inequality."""
    if Lambda <= 0:
        raise ValueError("Lambda must be positive")
    rule = rule if rule is not None else _default_rule(spec.K)
    f0 = fn.node_data(spec.function(), rule)
    fT = fn.node_data(evolve(spec, T).function(), rule)
    iT = fn.fisher_information(fT)[0]
    m = fn.mass(f0)
    if iT > DECAY_THRESHOLD * max(1.0, m):
        raise ValueError(f"T={T} too small: Fisher information {iT:.3e} has not decayed")
    i0 = fn.fisher_information(f0)[0]
    # h(0) - h(T) = deficit(0) - deficit(T); mass is conserved
    dh = fn.entropy_deficit(f0) - fn.entropy_deficit(fT)
    return 0.5 * (i0 - iT) - Lambda * dh


def random_spectrum(seed, K: int = 8, amplitude: float = 0.4, margin: float = 0.05) -> LegendreSpectrum:
    """Random positive even spectrum with ``a_0 = 1``, deterministic in ``seed``."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    for _ in range(100):
        c = np.concatenate([[1.0], rng.uniform(-amplitude, amplitude, K // 2)])
        spec = LegendreSpectrum(c)
        if spec.min_value() > margin:
            return spec
    raise PositivityError("could not draw a positive spectrum")
