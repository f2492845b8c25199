"""
Closed-form bounds on Lambda_d, alpha_d, lambda_d and the 1-D minimiser
used for the upper bounds on S^2.

For positive symmetric functions on S^{d-1} the constants satisfy
``lambda_d = 2d >= alpha_d >= Lambda_d``. Without the symmetry assumption
all three equal ``d - 1``; those unsymmetrised values are not reported here.
"""

from __future__ import annotations

import io
import csv
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

SERIES_THRESHOLD = 2.0
_SERIES_TERMS = 60
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_n(n):
    if n < 2:
        raise ValueError(f"dimension parameter n must be at least 2, got {n}")


def lambda_d(d: int) -> float:
    """First nonzero eigenvalue of ``-lap`` on symmetric functions: ``2d``."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    return 2.0 * d


def lambda_lower(d: int) -> float:
    """``Lambda_d >= d + 3 - 1/(d - 1)``."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    return d + 3.0 - 1.0 / (d - 1)


def cd_lambda_lower(lambda_M: float, rho: float, n: float) -> float:
    """Lower bound on Lambda_M for a manifold satisfying CD(rho, n).

    ``(4n - 1)/(n(n + 2)) lambda_M + (n - 1)^2/(n(n + 2)) * rho n/(n - 1)``.
    """
    _check_n(n)
    if not (rho > 0 and lambda_M > 0):
        raise ValueError("rho and lambda_M must be positive")
    w = n * (n + 2.0)
    return (4.0 * n - 1.0) / w * lambda_M + (n - 1.0) ** 2 / w * bakry_emery_lower(rho, n)


def bakry_emery_lower(rho: float, n: float) -> float:
    """``Lambda_M >= rho n / (n - 1)``."""
    _check_n(n)
    return rho * n / (n - 1.0)


def lichnerowicz_lower(rho: float, n: float) -> float:
    """``lambda_M >= rho n / (n - 1)`` (same value as the Bakry-Emery bound)."""
    _check_n(n)
    return rho * n / (n - 1.0)


def rothaus_lower(lam: float, rho: float, n: float) -> float:
    """``alpha_M >= 4n/(n+1)^2 lambda + (n-1)^2/(n+1)^2 * rho n/(n-1)``."""
    _check_n(n)
    w = (n + 1.0) ** 2
    return 4.0 * n / w * lam + (n - 1.0) ** 2 / w * bakry_emery_lower(rho, n)


def _u_series():
    # U(t) = 6 + 15 sum_j (-1)^j s^{j+1} c_j,  s = 1/t
    return [
        float(Fraction(1, 2 * j + 3) - Fraction(4, 2 * j + 5) + Fraction(3, 2 * j + 7)) * (-1) ** j
        for j in range(_SERIES_TERMS)
    ]


def _series_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _deficit_series():
    """Coefficients ``e_k`` with ``(int h log h - m log m) = sum_k e_k s^k``, ``s = 1/t``.

    ``h = t^2 (1 + s z^2)^2`` and ``m = t^2 mu(s)``; the orders ``t^2`` and
    ``t`` cancel exactly, so the sum starts at ``s^0``.
    """
    n = _SERIES_TERMS + 2
    # (1 + w)^2 * 2 log(1 + w), as a series in w = s z^2
    log1pw = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, n)]
    sq = [Fraction(1), Fraction(2), Fraction(1)]
    a = [2 * c for c in _series_mul(sq, log1pw, n)]
    first = [c / (2 * k + 1) for k, c in enumerate(a)]
    # mu log mu with mu = 1 + 2s/3 + s^2/5
    q = [Fraction(0), Fraction(2, 3), Fraction(1, 5)]
    logmu = [Fraction(0)] * n
    qk = [Fraction(1)]
    for k in range(1, n):
        qk = _series_mul(qk, q, n)
        sign = Fraction((-1) ** (k + 1), k)
        logmu = [x + sign * y for x, y in zip(logmu, qk + [Fraction(0)] * (n - len(qk)))]
    mu = [Fraction(1), Fraction(2, 3), Fraction(1, 5)]
    mulogmu = _series_mul(mu, logmu, n)
    diff = [x - y for x, y in zip(first, mulogmu)]
    assert diff[0] == 0 and diff[1] == 0
    return [float(c) for c in diff[2:]]


_U_COEFFS = np.array(_u_series())
_D_COEFFS = np.array(_deficit_series())


def _powseries(coeffs, s):
    return float(np.polynomial.polynomial.polyval(s, coeffs))


def upper_U(t: float) -> float:
    """Gamma_2 ratio of ``(z^2 + t)^2`` on S^2 in closed form.

    ``5(3t+1)(3t+2) - 15(t+1)(3t+1) sqrt(t) arctan(1/sqrt(t))``. For
    ``t >= SERIES_THRESHOLD`` the equivalent convergent series in ``1/t`` is
    summed instead, since the closed form loses about ``t^2 * eps`` to
    cancellation.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if t >= SERIES_THRESHOLD:
        s = 1.0 / t
        return 6.0 + 15.0 * s * _powseries(_U_COEFFS, s)
    st = math.sqrt(t)
    return 5.0 * (3 * t + 1) * (3 * t + 2) - 15.0 * (t + 1) * (3 * t + 1) * st * math.atan(1.0 / st)


def alpha_bracket(t: float) -> float:
    """The bracketed quantity whose reciprocal bounds alpha_3.

    ``2 t^2 sqrt(t) arctan(1/sqrt t) + 15/16 m log((t+1)^2/m) - (120t^2+35t+9)/60``
    with ``m = t^2 + 2t/3 + 1/5``; equal to ``15/16`` times the entropy
    deficit of ``(z^2 + t)^2``.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if t >= SERIES_THRESHOLD:
        return 15.0 / 16.0 * _powseries(_D_COEFFS, 1.0 / t)
    st = math.sqrt(t)
    m = t * t + 2.0 * t / 3.0 + 0.2
    return (
        2.0 * t * t * st * math.atan(1.0 / st)
        + 15.0 / 16.0 * m * math.log((t * t + 2.0 * t + 1.0) / m)
        - (120.0 * t * t + 35.0 * t + 9.0) / 60.0
    )


def upper_alpha_expr(t: float) -> float:
    """Log-Sobolev ratio of ``(z^2 + t)^2`` on S^2: ``1 / alpha_bracket(t)``."""
    b = alpha_bracket(t)
    if b <= 1e-14:
        raise ValueError(f"bracketed quantity {b:.3e} is not positive at t={t}")
    return 1.0 / b


def quartic_entropy(t: float) -> float:
    """``int (z^2+t)^2 log (z^2+t)^2 dsigma`` on S^2 in closed form."""
    st = math.sqrt(t)
    m = t * t + 2.0 * t / 3.0 + 0.2
    return (
        32.0 / 15.0 * t * t * st * math.atan(1.0 / st)
        + m * math.log(t * t + 2.0 * t + 1.0)
        - 4.0 * (120.0 * t * t + 35.0 * t + 9.0) / 225.0
    )


@dataclass(frozen=True)
class ScalarMinResult:
    t_star: float
    value: float
    evaluations: int
    bracket: tuple

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bracket"] = list(self.bracket)
        return d


def minimize_scalar(fn, lo: float, hi: float, tol: float = 1e-6, grid: int = 1000) -> ScalarMinResult:
    """Golden-section minimisation of ``fn`` on ``[lo, hi]``.

    A grid pre-scan (geometric when ``lo > 0``) locates the minimum and
    rejects functions with more than one interior local minimum, so the
    golden-section stage always runs on a unimodal bracket. The returned
    minimiser is within ``tol`` of the true one.
    """
    if not lo < hi:
        raise ValueError("need lo < hi")
    if not tol > 0:
        raise ValueError("tol must be positive")
    nevals = 0

    def f(x):
        nonlocal nevals
        nevals += 1
        v = float(fn(x))
        if not math.isfinite(v):
            raise FloatingPointError(f"objective is not finite at {x!r}")
        return v

    xs = np.geomspace(lo, hi, grid) if lo > 0 else np.linspace(lo, hi, grid)
    vs = np.array([f(x) for x in xs])
    interior = np.flatnonzero((vs[1:-1] < vs[:-2]) & (vs[1:-1] <= vs[2:])) + 1
    if len(interior) > 1:
        raise ValueError(f"objective has {len(interior)} local minima on the grid; not unimodal")
    i = int(np.argmin(vs))
    a, b = float(xs[max(i - 1, 0)]), float(xs[min(i + 1, grid - 1)])
    bracket = (a, b)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > 2.0 * tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return ScalarMinResult(x, f(x), nevals, bracket)


def minimize_upper(target: str, tol: float = 1e-6) -> ScalarMinResult:
    """Minimise the ``'lambda3'`` or ``'alpha3'`` upper-bound expression over ``t``."""
    fns = {"lambda3": upper_U, "alpha3": upper_alpha_expr}
    if target not in fns:
        raise ValueError(f"unknown target {target!r}; expected one of {sorted(fns)}")
    return minimize_scalar(fns[target], 1e-3, 100.0, tol)


CSV_FIELDS = (
    "d",
    "lambda_d",
    "lambda_lower",
    "cd_lower",
    "bakry_emery",
    "rothaus",
    "lichnerowicz",
    "upper_lambda3",
    "upper_alpha3",
)


@dataclass(frozen=True)
class BoundReport:
    """Every bound for one dimension ``d``; the upper bounds exist only for d = 3."""

    d: int
    lambda_d: float
    lambda_lower: float
    cd_lower: float
    bakry_emery: float
    rothaus: float
    lichnerowicz: float
    upper_lambda3: float | None = None
    upper_alpha3: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([_fmt(getattr(self, k)) for k in CSV_FIELDS])
        return buf.getvalue()


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{v:.17g}"


def bound_report(d: int) -> BoundReport:
    """Collect the bounds for S^{d-1} with ``(lambda, rho, n) = (2d, d - 2, d - 1)``."""
    lam, rho, n = lambda_d(d), d - 2.0, d - 1.0
    if d == 2:
        # rho = 0 on the circle: the CD-based formulas degenerate to lambda_lower
        cd = lambda_lower(2)
        be = li = 0.0
        ro = lam * 4.0 * n / (n + 1.0) ** 2
    else:
        cd = cd_lambda_lower(lam, rho, n)
        be = bakry_emery_lower(rho, n)
        li = lichnerowicz_lower(rho, n)
        ro = rothaus_lower(lam, rho, n)
    up_l = up_a = None
    if d == 3:
        up_l = minimize_upper("lambda3").value
        up_a = minimize_upper("alpha3").value
    return BoundReport(d, lam, lambda_lower(d), cd, be, ro, li, up_l, up_a)
