"""
Executable form of the lower-bound argument.

With ``A = lap log f`` and ``B = |grad log f|^2`` the lower bound comes from
mixing two integrated inequalities with weights ``theta`` and ``1 - theta``
so that their integrands combine to ``(A + B)(A + B/2) - tau B^2``. Because
that is a polynomial identity in ``A`` and ``B``, it can be checked on free
real variables. The pointwise curvature-dimension inequality and the trace
inequality for the structured 3x3 matrix are checked at sample points.
"""

from __future__ import annotations

import json

import numpy as np

from . import functionals as fn
from .bounds import cd_lambda_lower, lambda_lower
from .families import make_quartic, sample_random_symmetric
from .quadrature import gauss_z_rule, product_sphere_rule

STRUCTURE_TOL = 1e-14


def _pole(beta):
    if beta == -0.5:
        raise ValueError("beta = -1/2 is a pole of theta")


def theta_tau(d: int, beta: float) -> tuple[float, float]:
    """Mixing weight ``theta_d(beta)`` and leftover ``tau_d(beta)``.

    ``theta = -(d-2)/((d+1)(2 beta+1))``, ``tau = (2(d-2) beta + 2d - 3)/(4(d+1))``.
    For ``d = 2`` the pair is ``(0, 1/12)`` for every ``beta``.
    """
    if d == 2:
        return 0.0, 1.0 / 12.0
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    _pole(beta)
    theta = -(d - 2.0) / ((d + 1.0) * (2.0 * beta + 1.0))
    tau = (2.0 * (d - 2.0) * beta + 2.0 * d - 3.0) / (4.0 * (d + 1.0))
    return theta, tau


def q1_form(d: int, beta: float, A, B):
    """Integrand of the integrated CD inequality for ``g = f^{beta+1}``, rescaled by (d-1)/(d-2).

    ``A^2 - ((d+1)/(d-2) beta - (d-5)/(2(d-2))) AB + (beta^2 + (d-3)/(d-2) beta + (d-3)/(2(d-2))) B^2``.
    Undefined for ``d = 2``.
    """
    if d <= 2:
        raise ValueError("the rescaled form is undefined for d = 2")
    c_ab = (d + 1.0) / (d - 2.0) * beta - (d - 5.0) / (2.0 * (d - 2.0))
    c_bb = beta * beta + (d - 3.0) / (d - 2.0) * beta + (d - 3.0) / (2.0 * (d - 2.0))
    return A * A - c_ab * A * B + c_bb * B * B


def combination_residual(d: int, beta: float, A, B, tau_offset: float = 0.0):
    """``|theta Q1 + (1 - theta)(A + B/2)^2 - [(A + B)(A + B/2) - tau B^2]|``.

    For ``d = 2`` the product ``theta * Q1`` is replaced by its limit
    ``AB/2 + B^2/6`` as ``d -> 2``.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    theta, tau = theta_tau(d, beta)
    tau = tau + tau_offset
    mixed = 0.5 * A * B + B * B / 6.0 if d == 2 else theta * q1_form(d, beta, A, B)
    lhs = mixed + (1.0 - theta) * (A + 0.5 * B) ** 2
    rhs = (A + B) * (A + 0.5 * B) - tau * B * B
    return np.abs(lhs - rhs)


def beta_range(d: int) -> tuple[float, float]:
    """Closed interval of ``beta`` with ``0 <= theta <= 1`` and ``tau >= 0``.

    The lower end ``-(2d-3)/(2d-4)`` is where ``tau`` vanishes; the upper end
    ``-(2d-1)/(2d+2)`` is where ``theta`` reaches 1.
    """
    if d < 3:
        raise ValueError("beta range is defined for d >= 3")
    return -(2.0 * d - 3.0) / (2.0 * d - 4.0), -(2.0 * d - 1.0) / (2.0 * d + 2.0)


def beta_admissible(d: int, beta: float) -> bool:
    lo, hi = beta_range(d)
    return bool(lo <= beta <= hi)


def optimal_beta(d: int) -> float:
    return beta_range(d)[0]


def lower_bound_from_beta(d: int, beta: float) -> float:
    """``2d + (d - 2)/(2 beta + 1)`` for admissible ``beta``."""
    if d > 2 and not beta_admissible(d, beta):
        raise ValueError(f"beta={beta} is not admissible for d={d}")
    _pole(beta)
    return 2.0 * d + (d - 2.0) / (2.0 * beta + 1.0)


def cd_theta_tau(n: float, beta: float) -> tuple[float, float]:
    """Mixing weights for a manifold satisfying CD(rho, n).

    ``theta = -(n-1)/((n+2)(2 beta+1))``, ``tau = (2(n-1) beta + 2n - 1)/(4(n+2))``,
    which is what the combination identity forces; it coincides with
    :func:`theta_tau` at ``n = d - 1``.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    _pole(beta)
    theta = -(n - 1.0) / ((n + 2.0) * (2.0 * beta + 1.0))
    tau = (2.0 * (n - 1.0) * beta + 2.0 * n - 1.0) / (4.0 * (n + 2.0))
    return theta, tau


def cd_beta_range(n: float) -> tuple[float, float]:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    return -(2.0 * n - 1.0) / (2.0 * n - 2.0), -(2.0 * n + 1.0) / (2.0 * n + 4.0)


def cd_lower_from_beta(lam: float, rho: float, n: float, beta: float) -> float:
    """``lambda + (n-1)/((n+2)(2 beta+1)) (lambda - rho n/(n-1))``."""
    lo, hi = cd_beta_range(n)
    if not lo <= beta <= hi:
        raise ValueError(f"beta={beta} is not admissible for n={n}")
    return lam + (n - 1.0) / ((n + 2.0) * (2.0 * beta + 1.0)) * (lam - rho * n / (n - 1.0))


def trace_inequality_check(M) -> float:
    """``tr(M^2) - tr(M)^2 / 2`` for a 3x3 matrix with zero first column
    and symmetric lower-right 2x2 block."""
    M = np.asarray(M, dtype=float)
    if M.shape != (3, 3):
        raise ValueError("expected a 3x3 matrix")
    if np.max(np.abs(M[:, 0])) > STRUCTURE_TOL:
        raise ValueError("first column must vanish")
    if abs(M[1, 2] - M[2, 1]) > STRUCTURE_TOL * max(1.0, abs(M[1, 2])):
        raise ValueError("lower-right block must be symmetric")
    return float(np.trace(M @ M) - 0.5 * np.trace(M) ** 2)


def random_structured_matrix(rng, scale: float = 10.0) -> np.ndarray:
    M = np.zeros((3, 3))
    M[0, 1:] = rng.uniform(-scale, scale, 2)
    a, b, c = rng.uniform(-scale, scale, 3)
    M[1, 1], M[2, 2] = a, c
    M[1, 2] = M[2, 1] = b
    return M


def pointwise_cd_gap(f, rule) -> np.ndarray:
    """``||Hess log f||^2 - (lap log f)^2 / (d - 1)`` at every node of ``rule``."""
    nd = fn.node_data(f, rule)
    return nd.H2 - nd.A**2 / (nd.d - 1)


def pointwise_logf_inequality(f, rule) -> float:
    """Minimum over the nodes of :func:`pointwise_cd_gap` (nonnegative in exact arithmetic)."""
    return float(np.min(pointwise_cd_gap(f, rule)))


def _entry(count, max_residual, ok):
    return {"count": int(count), "max_residual": float(max_residual), "pass": bool(ok)}


def run_suite(seed: int = 0, perturb_tau: float = 0.0, n_random: int = 10_000) -> dict:
    """Run every check; returns ``{check_name: {count, max_residual, pass}}``.

    ``perturb_tau`` shifts ``tau`` inside the combination check; any nonzero
    value of order 1e-3 must make that check fail.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    out = {}

    ds = rng.integers(3, 11, n_random)
    worst = 0.0
    for d in range(3, 11):
        sel = ds == d
        lo, hi = beta_range(d)
        for beta in rng.uniform(lo, hi, int(sel.sum())):
            A, B = rng.uniform(-10, 10, 2)
            worst = max(worst, float(combination_residual(d, beta, A, B, perturb_tau)))
    out["combination_identity"] = _entry(n_random, worst, worst <= 1e-11)

    A, B = rng.uniform(-10, 10, (2, 1000))
    r2 = float(np.max(combination_residual(2, rng.uniform(-3, 0), A, B, perturb_tau)))
    out["combination_identity_d2"] = _entry(1000, r2, r2 <= 1e-11)

    mismatches, count = 0, 0
    for d in range(3, 11):
        lo, hi = beta_range(d)
        for beta in np.linspace(lo - 1.0, 0.0, 2001):
            if beta == -0.5:
                continue
            th, ta = theta_tau(d, beta)
            sharp = 0.0 <= th <= 1.0 and ta >= 0.0
            mismatches += sharp != beta_admissible(d, beta)
            count += 1
    out["beta_admissibility"] = _entry(count, mismatches, mismatches == 0)

    worst, count = 0.0, 0
    for d in range(3, 9):
        lo, hi = beta_range(d)
        grid = np.linspace(lo, hi, 1000)
        vals = [lower_bound_from_beta(d, b) for b in grid]
        i = int(np.argmax(vals))
        worst = max(worst, abs(vals[i] - lambda_lower(d)), abs(grid[i] - lo))
        count += len(grid)
    out["lower_bound_maximum"] = _entry(count, worst, worst <= 1e-9)

    worst, count = 0.0, 0
    for d in range(3, 11):
        lo, hi = beta_range(d)
        for beta in np.linspace(lo, hi, 50):
            a, b = theta_tau(d, beta), cd_theta_tau(d - 1, beta)
            worst = max(worst, abs(a[0] - b[0]), abs(a[1] - b[1]))
            count += 1
    out["cd_specialization"] = _entry(count, worst, worst <= 1e-14)

    worst, count = 0.0, 0
    for n in (2, 3, 4, 5, 7.5):
        for lam, rho in ((2 * (n + 1), n - 1), (10.0, 1.0), (3.0, 0.5)):
            if rho <= 0:
                continue
            lo, hi = cd_beta_range(n)
            grid = np.linspace(lo, hi, 1000)
            best = max(cd_lower_from_beta(lam, rho, n, b) for b in grid)
            worst = max(worst, abs(best - cd_lambda_lower(lam, rho, n)))
            count += len(grid)
    out["cd_bound_maximum"] = _entry(count, worst, worst <= 1e-9)

    worst = 0.0
    for _ in range(n_random):
        worst = min(worst, trace_inequality_check(random_structured_matrix(rng)))
    out["trace_inequality"] = _entry(n_random, max(0.0, -worst), worst >= -1e-12)

    sphere = product_sphere_rule(24, 48)
    worst = np.inf
    for i in range(100):
        amp = float(rng.uniform(0.01, 2.0))
        mode = "log" if i % 2 == 0 else "density"
        try:
            f = sample_random_symmetric((seed, 7, i), amp, mode)
        except ValueError:
            f = sample_random_symmetric((seed, 7, i), amp, "log")
        worst = min(worst, pointwise_logf_inequality(f, sphere))
    zr = gauss_z_rule(64, 3)
    worst = min(worst, pointwise_logf_inequality(make_quartic(0.69214), zr))
    out["pointwise_cd_logf"] = _entry(101, max(0.0, -worst), worst >= -1e-10)

    refs = [
        (lower_bound_from_beta(3, -1.0), 5.0),
        (lower_bound_from_beta(3, -1.5), 5.5),
        (lambda_lower(2), 4.0),
        (lower_bound_from_beta(2, -1.0), 4.0),
        (cd_lower_from_beta(6.0, 1.0, 2, -1.5), 5.5),
        (theta_tau(3, -1.5)[0], 0.125),
        (theta_tau(3, -1.5)[1], 0.0),
        (theta_tau(3, -1.0)[0], 0.25),
    ]
    worst = max(abs(a - b) for a, b in refs)
    out["reference_values"] = _entry(len(refs), worst, worst <= 1e-14)
    return out


def suite_passed(summary: dict) -> bool:
    return all(v["pass"] for v in summary.values())


def suite_json(summary: dict) -> str:
    return json.dumps(summary, indent=2, sort_keys=True)
