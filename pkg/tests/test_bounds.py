import csv
import io
import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma2sphere.bounds import (
    CSV_FIELDS,
    SERIES_THRESHOLD,
    alpha_bracket,
    bakry_emery_lower,
    bound_report,
    cd_lambda_lower,
    lambda_d,
    lambda_lower,
    lichnerowicz_lower,
    minimize_scalar,
    minimize_upper,
    quartic_entropy,
    rothaus_lower,
    upper_alpha_expr,
    upper_U,
)

mpmath.mp.dps = 50

# high-precision minima of the two closed forms, computed with mpmath.findroot on the derivative
U_MIN = (0.69213982, 5.7389159755643886)
ALPHA_MIN = (0.75758545, 5.8358689057194087)


def U_mp(t):
    t = mpmath.mpf(t)
    st_ = mpmath.sqrt(t)
    return 5 * (3 * t + 1) * (3 * t + 2) - 15 * (t + 1) * (3 * t + 1) * st_ * mpmath.atan(1 / st_)


def alpha_mp(t):
    t = mpmath.mpf(t)
    st_ = mpmath.sqrt(t)
    m = t * t + 2 * t / 3 + mpmath.mpf(1) / 5
    b = (
        2 * t * t * st_ * mpmath.atan(1 / st_)
        + mpmath.mpf(15) / 16 * m * mpmath.log((t * t + 2 * t + 1) / m)
        - (120 * t * t + 35 * t + 9) / mpmath.mpf(60)
    )
    return 1 / b


class TestLowerBounds:
    def test_lambda_lower_values(self):
        assert lambda_lower(2) == 4.0
        assert lambda_lower(3) == 5.5
        assert lambda_lower(4) == pytest.approx(20 / 3, abs=1e-15)
        with pytest.raises(ValueError):
            lambda_lower(1)

    def test_lambda_d(self):
        assert lambda_d(3) == 6.0
        with pytest.raises(ValueError):
            lambda_d(1)

    def test_cd(self):
        assert cd_lambda_lower(6, 1, 2) == pytest.approx(5.5, abs=1e-15)
        assert cd_lambda_lower(10, 3, 4) == pytest.approx(7.75, abs=1e-14)
        with pytest.raises(ValueError):
            cd_lambda_lower(6, 1, 1.5)
        with pytest.raises(ValueError):
            cd_lambda_lower(6, 0, 2)

    @settings(max_examples=50, deadline=None)
    @given(rho=st.floats(0.01, 10), n=st.floats(2, 50))
    def test_cd_weights_sum_to_one(self, rho, n):
        v = rho * n / (n - 1)
        assert cd_lambda_lower(v, rho, n) == pytest.approx(v, rel=1e-13)
        assert rothaus_lower(v, rho, n) == pytest.approx(v, rel=1e-13)

    @pytest.mark.parametrize("d", range(3, 40))
    def test_cd_recovers_sphere(self, d):
        assert cd_lambda_lower(2 * d, d - 2, d - 1) == pytest.approx(lambda_lower(d), abs=1e-12)
        assert rothaus_lower(2 * d, d - 2, d - 1) == pytest.approx(d + 3 - 4 / d**2, abs=1e-12)
        assert bakry_emery_lower(d - 2, d - 1) == pytest.approx(d - 1, abs=1e-13)
        assert lichnerowicz_lower(d - 2, d - 1) == pytest.approx(d - 1, abs=1e-13)

    def test_sphere_constants(self):
        assert bakry_emery_lower(1, 2) == 2.0
        assert lichnerowicz_lower(1, 2) == 2.0
        assert bakry_emery_lower(0, 5) == 0.0
        assert lichnerowicz_lower(0, 5) == 0.0
        assert rothaus_lower(6, 1, 2) == pytest.approx(50 / 9, abs=1e-15)

    def test_trend_towards_one(self):
        # both ratios approach 1 from above, monotonically
        ds = np.arange(3, 65)
        a = np.array([lambda_lower(d) / d for d in ds])
        b = np.array([rothaus_lower(2 * d, d - 2, d - 1) / d for d in ds])
        for r in (a, b):
            assert np.all(r > 1)
            assert np.all(np.diff(np.abs(r - 1)) < 0)
        assert abs(a[-1] - 1) < 0.05 and abs(b[-1] - 1) < 0.05


class TestUpperExpressions:
    @pytest.mark.parametrize(
        "t", [1e-3, 0.05, 0.3, 0.69214, 1.0, 1.99, 2.0, 3.0, 9.99, 37.0, 100.0, 1e3, 1e6, 1e9]
    )
    def test_against_high_precision(self, t):
        assert upper_U(t) == pytest.approx(float(U_mp(t)), abs=2e-13)
        assert upper_alpha_expr(t) == pytest.approx(float(alpha_mp(t)), rel=1e-12)

    def test_reference_points(self):
        assert upper_U(0.69214) == pytest.approx(5.73892, abs=1e-4)
        assert upper_alpha_expr(0.757585) == pytest.approx(5.8358, abs=1e-3)
        assert upper_U(1e6) == pytest.approx(6.0, abs=1e-2)
        assert upper_alpha_expr(1e6) == pytest.approx(6.0, abs=1e-2)

    def test_small_t_expansion(self):
        # U(t) = 10 - (15 pi / 2) sqrt(t) + O(t)
        for t in (1e-8, 1e-10):
            assert upper_U(t) == pytest.approx(10 - 7.5 * math.pi * math.sqrt(t), abs=100 * t)

    def test_series_branch_continuous(self):
        lo, hi = np.nextafter(SERIES_THRESHOLD, 0), SERIES_THRESHOLD
        assert upper_U(lo) == pytest.approx(upper_U(hi), abs=1e-13)
        assert alpha_bracket(lo) == pytest.approx(alpha_bracket(hi), rel=1e-11)

    def test_bracket_is_scaled_deficit(self, zrule):
        from gamma2sphere.families import make_quartic
        from gamma2sphere.functionals import entropy_deficit

        for t in (0.2, 2.0, 20.0):
            assert alpha_bracket(t) == pytest.approx(15 / 16 * entropy_deficit(make_quartic(t), zrule), rel=1e-10)

    def test_quartic_entropy_closed_form(self):
        for t in (0.1, 1.0, 5.0):
            f = lambda z: (z * z + t) ** 2 * mpmath.log((z * z + t) ** 2)
            exact = mpmath.quad(f, [-1, 0, 1]) / 2
            assert quartic_entropy(t) == pytest.approx(float(exact), rel=1e-12)

    def test_domain(self):
        for fn in (upper_U, upper_alpha_expr):
            with pytest.raises(ValueError):
                fn(0.0)


class TestMinimize:
    def test_quadratic(self):
        r = minimize_scalar(lambda t: (t - 2) ** 2, 0.0, 5.0, tol=1e-8)
        assert r.t_star == pytest.approx(2.0, abs=1e-8)
        assert r.value == pytest.approx(0.0, abs=1e-15)
        assert r.bracket[0] <= r.t_star <= r.bracket[1]

    def test_lambda3(self):
        r = minimize_upper("lambda3")
        assert r.t_star == pytest.approx(U_MIN[0], abs=1e-6)
        assert r.value == pytest.approx(U_MIN[1], abs=1e-12)
        assert r.t_star == pytest.approx(0.69214, abs=1e-3)
        assert r.value == pytest.approx(5.73892, abs=1e-4)

    def test_alpha3(self):
        r = minimize_upper("alpha3")
        assert r.t_star == pytest.approx(ALPHA_MIN[0], abs=1e-6)
        assert r.value == pytest.approx(ALPHA_MIN[1], abs=1e-12)
        assert r.t_star == pytest.approx(0.757585, abs=1e-3)

    def test_result_beats_bracket(self):
        r = minimize_upper("lambda3")
        assert r.value <= upper_U(r.bracket[0]) and r.value <= upper_U(r.bracket[1])

    def test_sandwich(self):
        u = minimize_upper("lambda3").value
        a = minimize_upper("alpha3").value
        assert lambda_lower(3) <= u <= 6.0
        assert 50 / 9 <= a <= 6.0
        assert 6.0 >= a >= u >= 5.5

    def test_errors(self):
        with pytest.raises(ValueError):
            minimize_upper("lambda4")
        with pytest.raises(ValueError):
            minimize_scalar(lambda t: np.cos(t), 0.0, 30.0)
        with pytest.raises(FloatingPointError):
            minimize_scalar(lambda t: np.nan, 0.0, 1.0)
        with pytest.raises(ValueError):
            minimize_scalar(lambda t: t, 1.0, 0.0)


class TestReport:
    def test_d3(self):
        r = bound_report(3)
        assert (r.lambda_d, r.lambda_lower, r.cd_lower, r.bakry_emery, r.lichnerowicz) == (6.0, 5.5, 5.5, 2.0, 2.0)
        assert r.rothaus == pytest.approx(50 / 9, abs=1e-15)
        assert r.lambda_d >= r.upper_alpha3 >= r.upper_lambda3 >= r.lambda_lower

    def test_csv_row(self):
        row = next(csv.reader(io.StringIO(bound_report(3).to_csv_row())))
        assert len(row) == len(CSV_FIELDS)
        assert row[0] == "3" and float(row[2]) == 5.5
        assert float(row[5]) == 50 / 9
        row4 = next(csv.reader(io.StringIO(bound_report(4).to_csv_row())))
        assert row4[-2:] == ["", ""]

    def test_json(self):
        d = json.loads(bound_report(5).to_json())
        assert set(d) == set(CSV_FIELDS)
        assert d["upper_lambda3"] is None

    def test_d2(self):
        r = bound_report(2)
        assert r.lambda_lower == 4.0 and r.cd_lower == 4.0

    @pytest.mark.parametrize("d", [4, 10, 30])
    def test_ordering(self, d):
        r = bound_report(d)
        assert r.lambda_d >= r.rothaus >= r.lambda_lower >= r.bakry_emery
        assert r.cd_lower == pytest.approx(r.lambda_lower, abs=1e-12)
