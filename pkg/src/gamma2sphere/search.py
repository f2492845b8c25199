"""
Randomized search for small Gamma_2 ratios among symmetric functions on S^2.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import PositivityError, UndefinedRatioError
from .families import sample_random_symmetric
from .functionals import gamma2_ratio
from .quadrature import product_sphere_rule

AMPLITUDE_RANGE = (0.01, 2.0)
DEGREE_SETS = ((2,), (2, 4))
RESOLUTION_RTOL = 1e-8


@dataclass(frozen=True)
class SearchSummary:
    """Outcome of :func:`random_search`.

    ``count`` samples were requested; only the ``accepted`` ones, whose
    ratio agrees on two quadrature rules, enter ``min_ratio`` and friends.
    """

    seed: int
    count: int
    accepted: int
    unresolved: int
    rejected: int
    min_ratio: float | None
    max_ratio: float | None
    mean_ratio: float | None
    below_six: int
    best: dict | None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def sample_plan(seed: int, count: int, amplitude: float | None = None):
    """Yield ``(index, mode, degrees, amplitude)`` for each sample.

    Modes alternate log/density and degree sets alternate between pure
    quadratics and quadratics plus quartics. Without a fixed ``amplitude``
    each sample draws one uniformly from :data:`AMPLITUDE_RANGE`.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 0])))
    amps = rng.uniform(*AMPLITUDE_RANGE, count) if amplitude is None else np.full(count, float(amplitude))
    for i in range(count):
        yield i, ("log", "density")[i % 2], DEGREE_SETS[(i // 2) % 2], float(amps[i])


def default_ladder():
    """Pairs of product rules tried in turn, coarsest first."""
    return (
        (product_sphere_rule(24, 48), product_sphere_rule(16, 32)),
        (product_sphere_rule(64, 128), product_sphere_rule(48, 96)),
    )


def resolved_ratio(f, ladder) -> float | None:
    """Gamma_2 ratio from the first rule pair that agrees to :data:`RESOLUTION_RTOL`, else None."""
    for fine, coarse in ladder:
        a = gamma2_ratio(f, fine)
        b = gamma2_ratio(f, coarse)
        if abs(a - b) <= RESOLUTION_RTOL * abs(a):
            return a
    return None


def random_search(seed: int = 0, count: int = 1000, amplitude: float | None = None, ladder=None) -> SearchSummary:
    """Evaluate ``gamma2_ratio`` over ``count`` random symmetric functions on S^2.

    Each ratio must agree between two product rules (see
    :func:`default_ladder`); samples no rule pair resolves are counted as
    unresolved and dropped. Samples that cannot be made positive, or are
    constant, are counted as rejected.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if amplitude is not None and amplitude < 0:
        raise ValueError("amplitude must be non-negative")
    ladder = ladder if ladder is not None else default_ladder()
    ratios, best = [], None
    unresolved = rejected = 0
    for i, mode, degrees, amp in sample_plan(seed, count, amplitude):
        try:
            f = sample_random_symmetric((seed, 1, i), amp, mode, 3, degrees)
            a = resolved_ratio(f, ladder)
        except (PositivityError, UndefinedRatioError):
            rejected += 1
            continue
        if a is None:
            unresolved += 1
            continue
        ratios.append(a)
        if best is None or a < best["gamma2_ratio"]:
            best = {"index": i, "mode": mode, "degrees": list(degrees), "amplitude": amp, "gamma2_ratio": a}
    r = np.array(ratios)
    stats = (float(r.min()), float(r.max()), float(r.mean())) if r.size else (None, None, None)
    return SearchSummary(
        seed, count, int(r.size), unresolved, rejected, *stats, int(np.sum(r < 6.0)), best
    )
