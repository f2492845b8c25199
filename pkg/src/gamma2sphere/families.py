"""
Test functions: the quartic family ``(z^2 + t)^2`` and random even polynomials.
"""

from __future__ import annotations

import json

import numpy as np

from .exceptions import PositivityError
from .functionals import POSITIVITY_FLOOR, AxisymmetricFunction, SymmetricPositiveFunction
from .quadrature import product_sphere_rule
from .sphere_geometry import AxisymmetricProfile, Polynomial

MAX_ATTEMPTS = 100
MODES = ("log", "density")


def quartic_profile(t: float, d: int = 3) -> AxisymmetricProfile:
    """``phi(z) = (z^2 + t)^2`` with exact derivatives."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    return AxisymmetricProfile(
        lambda z: (z * z + t) ** 2,
        lambda z: 4.0 * z * (z * z + t),
        lambda z: 12.0 * z * z + 4.0 * t,
        d,
    )


def make_quartic(t: float, d: int = 3) -> AxisymmetricFunction:
    """The function ``h(x, y, z) = (z^2 + t)^2``."""
    return AxisymmetricFunction(quartic_profile(t, d))


def scaled_quartic(t: float, d: int = 3) -> AxisymmetricFunction:
    """``(1 + z^2/t)^2``, i.e. ``make_quartic(t) / t^2``; usable for very large ``t``."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    s = 1.0 / t
    prof = AxisymmetricProfile(
        lambda z: (1.0 + s * z * z) ** 2,
        lambda z: 4.0 * s * z * (1.0 + s * z * z),
        lambda z: 4.0 * s + 12.0 * s * s * z * z,
        d,
    )
    return AxisymmetricFunction(prof)


def even_exp_profile(coeffs, d: int = 3) -> AxisymmetricFunction:
    """``f = exp(c_0 + c_1 z^2 + c_2 z^4 + ...)`` from the even coefficients."""
    full = np.zeros(2 * len(coeffs) - 1)
    full[::2] = coeffs
    return AxisymmetricFunction(AxisymmetricProfile.polynomial(full, d), log=True)


def legendre_exp(eps: float, k: int = 2, d: int = 3) -> AxisymmetricFunction:
    """``f = exp(eps * P_k(z))`` for even ``k``."""
    if k % 2:
        raise ValueError("k must be even for an antipodally symmetric function")
    leg = np.polynomial.Legendre.basis(k)
    p = np.polynomial.Polynomial(np.polynomial.legendre.leg2poly(leg.coef)) * eps
    return AxisymmetricFunction(AxisymmetricProfile(p, p.deriv(1), p.deriv(2), d), log=True)


class EvenPolynomialFunction(SymmetricPositiveFunction):
    """``f = p`` (density mode) or ``f = exp(p)`` (log mode) for an even polynomial ``p``."""

    def __init__(self, poly: Polynomial, mode: str = "log"):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        if not poly.is_even():
            raise ValueError("polynomial has odd-degree terms")
        self.poly = poly
        self.mode = mode
        self.d = poly.d

    def __repr__(self):
        return f"EvenPolynomialFunction(mode={self.mode!r}, d={self.d}, terms={len(self.poly.coeffs)})"

    def jet_ambient(self, x):
        p, g, H = self.poly.jet(x)
        if self.mode == "density":
            return p, g, H
        F = np.exp(p)
        return F, F[:, None] * g, F[:, None, None] * (H + g[:, :, None] * g[:, None, :])

    def log_jet_ambient(self, x):
        if self.mode == "density":
            return super().log_jet_ambient(x)
        return self.poly.jet(x)

    def scaled(self, c):
        if c <= 0:
            raise ValueError("scale factor must be positive")
        p = self.poly
        if self.mode == "density":
            return EvenPolynomialFunction(Polynomial(p.exponents, c * p.coeffs), "density")
        const = Polynomial(np.zeros((1, p.d), dtype=int), [np.log(c)])
        terms = {tuple(e): v for e, v in zip(p.exponents, p.coeffs)}
        key = tuple(const.exponents[0])
        terms[key] = terms.get(key, 0.0) + const.coeffs[0]
        return EvenPolynomialFunction(Polynomial.from_dict(terms, p.d), "log")


def _rng(seed):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def sample_random_symmetric(
    seed, amplitude: float, mode: str = "log", d: int = 3, degrees=(2, 4), check_rule=None
) -> EvenPolynomialFunction:
    """Random even polynomial test function, deterministic in ``seed``.

    Coefficients of every monomial of the given even ``degrees`` are drawn
    uniformly from ``[-amplitude, amplitude]``. In log mode ``f = exp(p)``;
    in density mode ``f = 1 + p``, redrawn (from the same stream) until it
    clears the positivity floor on ``check_rule``.

    Parameters
    ----------
    seed : int or sequence of int
        Key of the counter-based generator.
    amplitude : float
        Coefficient range; 0 gives a constant function.
    """
    if amplitude < 0:
        raise ValueError("amplitude must be non-negative")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if any(k % 2 for k in degrees):
        raise ValueError("only even degrees keep the function symmetric")
    rng = _rng(seed)
    exps = Polynomial.monomial_basis(d, degrees)
    if mode == "log":
        return EvenPolynomialFunction(Polynomial(exps, rng.uniform(-amplitude, amplitude, len(exps))), "log")
    if check_rule is None:
        check_rule = product_sphere_rule(16, 32) if d == 3 else None
    pts = check_rule.points if check_rule is not None else _random_sphere_points(rng, d, 2048)
    exps = np.vstack([np.zeros((1, d), dtype=int), exps])
    for _ in range(MAX_ATTEMPTS):
        coeffs = np.concatenate([[1.0], rng.uniform(-amplitude, amplitude, len(exps) - 1)])
        poly = Polynomial(exps, coeffs)
        vals = poly.value(pts)
        if np.min(vals) > POSITIVITY_FLOOR * np.max(vals) and np.min(vals) > 0:
            return EvenPolynomialFunction(poly, "density")
    raise PositivityError(
        f"no positive density found in {MAX_ATTEMPTS} attempts at amplitude {amplitude}"
    )


def _random_sphere_points(rng, d, n):
    x = rng.standard_normal((n, d))
    return x / np.linalg.norm(x, axis=1)[:, None]


def harmonic_polynomial(k: int, a, b) -> Polynomial:
    """``Re((v . x)^k)`` with ``v = a + i b``; harmonic when ``a.a = b.b`` and ``a.b = 0``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d = len(a)
    terms: dict = {(0,) * d: 1.0 + 0j}
    v = a + 1j * b
    for _ in range(k):
        nxt: dict = {}
        for e, c in terms.items():
            for i in range(d):
                e2 = list(e)
                e2[i] += 1
                nxt[tuple(e2)] = nxt.get(tuple(e2), 0) + c * v[i]
        terms = nxt
    return Polynomial.from_dict({e: c.real for e, c in terms.items()}, d)


def random_harmonic(k: int, d: int, seed) -> Polynomial:
    """Random homogeneous harmonic polynomial of degree ``k`` on R^d."""
    rng = _rng(seed)
    a = rng.standard_normal(d)
    b = rng.standard_normal(d)
    b -= (a @ b) / (a @ a) * a
    b *= np.linalg.norm(a) / np.linalg.norm(b)
    return harmonic_polynomial(k, a, b)


def describe(f) -> dict:
    """JSON-ready descriptor of a family member (``family`` key plus parameters)."""
    desc = getattr(f, "descriptor", None)
    if desc is None:
        raise ValueError(f"{f!r} was not built by a descriptor-aware constructor")
    return dict(desc)


def from_descriptor(desc) -> SymmetricPositiveFunction:
    """Rebuild a function from :func:`describe` output (dict or JSON string)."""
    if isinstance(desc, str):
        desc = json.loads(desc)
    fam = desc.get("family")
    d = int(desc.get("d", 3))
    if fam == "quartic":
        f = make_quartic(float(desc["t"]), d)
    elif fam == "scaled_quartic":
        f = scaled_quartic(float(desc["t"]), d)
    elif fam == "even_poly":
        seed = desc["seed"]
        seed = tuple(seed) if isinstance(seed, list) else seed
        f = sample_random_symmetric(seed, float(desc["amplitude"]), desc.get("mode", "log"), d)
    elif fam == "constant":
        c = float(desc.get("value", 1.0))
        f = AxisymmetricFunction(AxisymmetricProfile.polynomial([c], d))
    else:
        raise ValueError(f"unknown family {fam!r}")
    f.descriptor = dict(desc)
    return f


def quartic(t: float, d: int = 3) -> AxisymmetricFunction:
    """:func:`make_quartic` carrying its JSON descriptor."""
    return from_descriptor({"family": "quartic", "t": t, "d": d})


def random_symmetric(seed, amplitude: float, mode: str = "log", d: int = 3) -> EvenPolynomialFunction:
    """:func:`sample_random_symmetric` carrying its JSON descriptor."""
    seed_json = list(seed) if isinstance(seed, (tuple, list)) else seed
    return from_descriptor(
        {"family": "even_poly", "seed": seed_json, "amplitude": amplitude, "mode": mode, "d": d}
    )
