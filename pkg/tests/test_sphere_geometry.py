import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_sphere_points
from gamma2sphere.families import random_harmonic
from gamma2sphere.sphere_geometry import (
    AxisymmetricProfile,
    Polynomial,
    as_sphere_points,
    axi_gradient_sq,
    axi_hessian_norm_sq,
    axi_laplacian,
    laplace_beltrami,
    laplace_beltrami_radial,
    project_tangent,
    spherical_gradient,
    spherical_hessian,
)

E1, E2, E3 = np.eye(3)


def poly(terms, d=3):
    return Polynomial.from_dict(terms, d)


Z2 = poly({(0, 0, 2): 1.0})
CONST = poly({(0, 0, 0): 2.5})


def test_points_must_be_unit():
    with pytest.raises(ValueError):
        as_sphere_points([1.0, 1.0, 0.0])
    as_sphere_points([1.0, 0.0, 0.0])


def test_project_tangent_basic():
    np.testing.assert_allclose(project_tangent(E1, E1), 0.0)
    np.testing.assert_allclose(project_tangent(E1, E2), E2)
    with pytest.raises(ValueError):
        project_tangent(E1, [1.0, 2.0])


def test_project_tangent_orthogonal(rng):
    pts = random_sphere_points(rng, 200, 5)
    r = project_tangent(pts, rng.standard_normal((200, 5)))
    assert np.max(np.abs(np.sum(r * pts, axis=1))) < 1e-14


class TestGradient:
    def test_sqrt_quartic(self, rng):
        # |grad (z^2 + t)|^2 = 4 z^2 (1 - z^2)
        t = 0.7
        F = poly({(0, 0, 2): 1.0, (0, 0, 0): t})
        pts = random_sphere_points(rng, 50, 3)
        g = spherical_gradient(F, pts)
        z = pts[:, 2]
        np.testing.assert_allclose(np.sum(g * g, axis=1), 4 * z**2 * (1 - z**2), atol=1e-14)

    def test_constant(self, rng):
        assert np.all(spherical_gradient(CONST, random_sphere_points(rng, 10, 3)) == 0)

    def test_linear_at_pole(self):
        np.testing.assert_allclose(spherical_gradient(poly({(0, 0, 1): 1.0}), E3), 0.0)

    def test_matches_finite_differences_along_geodesic(self, rng):
        F = Polynomial(Polynomial.monomial_basis(3, (2, 4)), rng.standard_normal(21))
        sigma = random_sphere_points(rng, 1, 3)[0]
        v = project_tangent(sigma, rng.standard_normal(3))
        v /= np.linalg.norm(v)
        h = 1e-5

        def along(s):
            return F.value(np.cos(s) * sigma + np.sin(s) * v)[0]

        fd = (along(h) - along(-h)) / (2 * h)
        assert spherical_gradient(F, sigma) @ v == pytest.approx(fd, abs=1e-8)


class TestHessian:
    def test_z_squared_at_pole(self):
        H = spherical_hessian(Z2, E3)
        P = np.eye(3) - np.outer(E3, E3)
        np.testing.assert_allclose(H, -2 * P, atol=1e-15)
        assert np.trace(H) == pytest.approx(-4.0)

    def test_constant_is_zero(self, rng):
        H = spherical_hessian(CONST, random_sphere_points(rng, 5, 3))
        assert np.all(H == 0)

    def test_eigenfunction_trace(self, zrule):
        F = poly({(0, 0, 2): 1.0, (0, 0, 0): -1 / 3})
        z = zrule.nodes
        pts = np.column_stack([np.sqrt(1 - z * z), np.zeros_like(z), z])
        lap = np.trace(spherical_hessian(F, pts), axis1=1, axis2=2)
        np.testing.assert_allclose(lap, -6 * (z * z - 1 / 3), atol=1e-13)

    @pytest.mark.parametrize("d", [3, 4, 6])
    def test_annihilates_normal(self, rng, d):
        E = Polynomial.monomial_basis(d, (2, 4))
        F = Polynomial(E, rng.standard_normal(len(E)))
        pts = random_sphere_points(rng, 40, d)
        H = spherical_hessian(F, pts)
        np.testing.assert_allclose(np.einsum("nij,nj->ni", H, pts), 0.0, atol=1e-12)
        np.testing.assert_allclose(H, np.swapaxes(H, 1, 2), atol=1e-13)

    def test_second_derivative_along_geodesic(self, rng):
        F = Polynomial(Polynomial.monomial_basis(3, (2, 4)), rng.standard_normal(21))
        sigma = random_sphere_points(rng, 1, 3)[0]
        v = project_tangent(sigma, rng.standard_normal(3))
        v /= np.linalg.norm(v)
        h = 1e-4

        def along(s):
            return F.value(np.cos(s) * sigma + np.sin(s) * v)[0]

        fd = (along(h) - 2 * along(0) + along(-h)) / h**2
        assert v @ spherical_hessian(F, sigma) @ v == pytest.approx(fd, abs=1e-6)

    def test_extension_independence(self, rng):
        # z^2 and z^2 |x|^2 agree on the sphere
        other = poly({(2, 0, 2): 1.0, (0, 2, 2): 1.0, (0, 0, 4): 1.0})
        pts = random_sphere_points(rng, 30, 3)
        np.testing.assert_allclose(spherical_gradient(Z2, pts), spherical_gradient(other, pts), atol=1e-12)
        np.testing.assert_allclose(spherical_hessian(Z2, pts), spherical_hessian(other, pts), atol=1e-12)


class TestLaplaceBeltrami:
    def test_trace_and_radial_forms_agree(self, rng):
        F = Polynomial(Polynomial.monomial_basis(4, (1, 2, 3)), rng.standard_normal(34))
        pts = random_sphere_points(rng, 30, 4)
        np.testing.assert_allclose(laplace_beltrami(F, pts), laplace_beltrami_radial(F, pts), atol=1e-12)
        H = spherical_hessian(F, pts)
        assert np.array_equal(laplace_beltrami(F, pts), np.trace(H, axis1=1, axis2=2))

    def test_constant(self):
        assert laplace_beltrami(CONST, E2) == 0

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_harmonics_are_eigenfunctions(self, rng, k, d):
        F = random_harmonic(k, d, seed=(k, d))
        pts = random_sphere_points(rng, 25, d)
        np.testing.assert_allclose(
            laplace_beltrami(F, pts), -k * (d + k - 2) * F.value(pts), atol=1e-10 * max(1, np.max(np.abs(F.value(pts))))
        )

    def test_cd_inequality_pointwise(self, rng):
        for d in (3, 4, 5):
            E = Polynomial.monomial_basis(d, (2, 4))
            F = Polynomial(E, rng.standard_normal(len(E)))
            pts = random_sphere_points(rng, 200, d)
            H = spherical_hessian(F, pts)
            lap = np.trace(H, axis1=1, axis2=2)
            gap = np.sum(H * H, axis=(1, 2)) - lap**2 / (d - 1)
            assert np.min(gap) >= -1e-10


class TestAxisymmetric:
    def test_quartic_sqrt_gradient(self):
        t = 0.3
        z = np.linspace(-1, 1, 11)
        prof = AxisymmetricProfile.polynomial([t, 0, 1])
        np.testing.assert_allclose(axi_gradient_sq(prof, z), 4 * z**2 * (1 - z**2), atol=1e-15)

    def test_eigen_profiles(self):
        z = np.linspace(-1, 1, 9)
        np.testing.assert_allclose(
            axi_laplacian(AxisymmetricProfile.polynomial([-1 / 3, 0, 1]), z), -6 * (z**2 - 1 / 3), atol=1e-14
        )
        lin = AxisymmetricProfile.polynomial([0, 1])
        np.testing.assert_allclose(axi_laplacian(lin, z), -2 * z, atol=1e-15)
        np.testing.assert_allclose(axi_hessian_norm_sq(lin, z), 2 * z**2, atol=1e-15)

    def test_constant(self):
        c = AxisymmetricProfile.polynomial([3.0])
        for fn in (axi_gradient_sq, axi_laplacian, axi_hessian_norm_sq):
            assert np.all(fn(c, np.linspace(-1, 1, 5)) == 0)

    def test_outside_interval(self):
        c = AxisymmetricProfile.polynomial([1.0, 0, 1])
        for fn in (axi_gradient_sq, axi_laplacian, axi_hessian_norm_sq):
            with pytest.raises(ValueError):
                fn(c, 1.5)

    def test_profile_derivatives_match_finite_differences(self, rng):
        prof = AxisymmetricProfile.polynomial(rng.standard_normal(7))
        z = rng.uniform(-0.9, 0.9, 20)
        h = 1e-5
        np.testing.assert_allclose(prof.dphi(z), (prof.phi(z + h) - prof.phi(z - h)) / (2 * h), atol=1e-8)
        np.testing.assert_allclose(prof.ddphi(z), (prof.dphi(z + h) - prof.dphi(z - h)) / (2 * h), atol=1e-8)

    @settings(max_examples=60, deadline=None)
    @given(
        coeffs=st.lists(st.floats(-3, 3), min_size=2, max_size=7),
        d=st.integers(3, 7),
        u=st.floats(-1, 1),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_reductions_match_projection(self, coeffs, d, u, seed):
        prof = AxisymmetricProfile.polynomial(coeffs, d)
        rng = np.random.default_rng(seed)
        w = rng.standard_normal(d - 1)
        w /= np.linalg.norm(w)
        sigma = np.concatenate([np.sqrt(1 - u * u) * w, [u]])
        sigma /= np.linalg.norm(sigma)
        z = sigma[-1]
        F = prof.to_ambient()
        g = spherical_gradient(F, sigma)
        H = spherical_hessian(F, sigma)
        scale = 1.0 + np.sum(np.abs(coeffs)) ** 2 * 50
        assert axi_gradient_sq(prof, z) == pytest.approx(g @ g, rel=1e-10, abs=1e-10 * scale)
        assert axi_laplacian(prof, z) == pytest.approx(np.trace(H), rel=1e-10, abs=1e-10 * scale)
        assert axi_hessian_norm_sq(prof, z) == pytest.approx(np.sum(H * H), rel=1e-10, abs=1e-10 * scale)
