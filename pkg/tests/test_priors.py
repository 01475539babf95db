import numpy as np
import pytest
from scipy import integrate

from qbayes.core import trace_distance
from qbayes.ensemble import marginal_state
from qbayes.errors import InvalidPriorError
from qbayes.priors import (
    PriorSpec,
    bures_radius_quantile,
    discretize_prior,
    radial_cdf,
    sample_bloch_uniform,
    sample_bures,
    sample_isotropic_radial,
    sample_pure_haar,
)

N = 100_000


def _bures_density(r):
    return r**2 / np.sqrt(1 - r**2)


class TestUniformBall:
    def test_mean(self):
        np.testing.assert_allclose(sample_bloch_uniform(N, 11).mean(axis=0), 0, atol=0.02)

    def test_second_moment(self):
        expected, _ = integrate.quad(lambda r: r**2 * 3 * r**2, 0, 1)
        assert expected == pytest.approx(0.6, abs=1e-12)
        pts = sample_bloch_uniform(N, 12)
        assert np.mean(np.sum(pts**2, axis=1)) == pytest.approx(expected, abs=0.01)

    def test_deterministic(self):
        np.testing.assert_array_equal(sample_bloch_uniform(1000, 5), sample_bloch_uniform(1000, 5))
        assert not np.array_equal(sample_bloch_uniform(1000, 5), sample_bloch_uniform(1000, 6))

    def test_inside_ball(self):
        assert np.all(np.linalg.norm(sample_bloch_uniform(N, 3), axis=1) <= 1 + 1e-12)


class TestPureHaar:
    def test_on_sphere(self):
        np.testing.assert_allclose(np.linalg.norm(sample_pure_haar(1000, 1), axis=1), 1, atol=1e-12)

    def test_moments(self):
        z = sample_pure_haar(N, 2)[:, 2]
        expected, _ = integrate.quad(lambda t: np.cos(t) ** 2 * np.sin(t) / 2, 0, np.pi)
        assert expected == pytest.approx(1 / 3, abs=1e-12)
        assert z.mean() == pytest.approx(0, abs=0.02)
        assert np.mean(z**2) == pytest.approx(expected, abs=0.01)


class TestBures:
    def test_mean_radius(self):
        norm, _ = integrate.quad(_bures_density, 0, 1)
        first, _ = integrate.quad(lambda r: r * _bures_density(r), 0, 1)
        expected = first / norm
        assert expected == pytest.approx(8 / (3 * np.pi), abs=1e-9)
        pts = sample_bures(N, 3)
        np.testing.assert_allclose(pts.mean(axis=0), 0, atol=0.02)
        assert np.linalg.norm(pts, axis=1).mean() == pytest.approx(expected, abs=0.01)

    @pytest.mark.parametrize("u", [0.0, 0.1, 0.37, 0.5, 0.9, 0.999])
    def test_quantile_inverts_cdf(self, u):
        norm, _ = integrate.quad(_bures_density, 0, 1)
        r = bures_radius_quantile(u)
        cdf, _ = integrate.quad(_bures_density, 0, r)
        assert cdf / norm == pytest.approx(u, abs=1e-9)


class TestIsotropicRadial:
    def test_uniform_density_matches_ball(self):
        grid = np.linspace(0, 1, 2001)
        pts = sample_isotropic_radial(N, 4, grid, np.ones_like(grid))
        assert np.mean(np.sum(pts**2, axis=1)) == pytest.approx(0.6, abs=0.01)

    def test_shell_concentration(self):
        grid = np.linspace(0, 1, 2001)
        dens = np.where(grid > 0.9, 1.0, 0.0)
        r = np.linalg.norm(sample_isotropic_radial(10_000, 4, grid, dens), axis=1)
        assert r.min() >= 0.9 - 1e-3

    def test_cdf_monotone(self):
        grid = np.linspace(0, 1, 101)
        cdf = radial_cdf(grid, np.exp(-grid))
        assert cdf[0] == 0 and cdf[-1] == pytest.approx(1)
        assert np.all(np.diff(cdf) >= 0)

    @pytest.mark.parametrize(
        "grid,density",
        [
            ([0, 0.5, 1], [0, 0, 0]),
            ([0, 0.5, 1], [1, -1, 1]),
            ([0, 0.5, 1.5], [1, 1, 1]),
            ([0, 0.5, 1], [1, np.inf, 1]),
            ([0.5, 0.2, 1], [1, 1, 1]),
        ],
    )
    def test_unnormalizable(self, grid, density):
        with pytest.raises(InvalidPriorError):
            radial_cdf(np.array(grid, float), np.array(density, float))


class TestDiscretize:
    def test_single_atom(self):
        e = discretize_prior(PriorSpec("atoms", parameters={"atoms": [{"weight": 1.0, "bloch": [0, 0, 0]}]}))
        assert e.size == 1
        np.testing.assert_allclose(e.states[0], np.eye(2) / 2, atol=0)

    def test_matrix_atom(self):
        m = {"dim": 2, "data": [[0.9, 0], [0.3, 0], [0.3, 0], [0.1, 0]]}
        e = discretize_prior(PriorSpec("atoms", parameters={"atoms": [{"weight": 1.0, "matrix": m}]}))
        np.testing.assert_allclose(e.bloch[0], [0.6, 0, 0.8], atol=1e-15)

    @pytest.mark.parametrize("kind", ["uniform-ball", "pure-haar", "bures"])
    @pytest.mark.parametrize("count", [1000, 10_000])
    def test_isotropic_marginal(self, kind, count):
        e = discretize_prior(PriorSpec(kind, atom_count=count, seed=7))
        assert trace_distance(marginal_state(e), np.eye(2) / 2) <= min(0.02, 3 / np.sqrt(count))

    def test_radial_marginal(self):
        grid = np.linspace(0, 1, 201)
        e = discretize_prior(
            PriorSpec("isotropic-radial", atom_count=10_000, seed=1, parameters={"grid": grid.tolist(), "density": (1 - grid).tolist()})
        )
        assert trace_distance(marginal_state(e), np.eye(2) / 2) <= 0.03

    def test_deterministic(self):
        spec = PriorSpec("bures", atom_count=500, seed=99)
        a, b = discretize_prior(spec), discretize_prior(spec)
        np.testing.assert_array_equal(a.states, b.states)
        np.testing.assert_array_equal(a.log_weights, b.log_weights)

    def test_symmetrized_has_zero_mean(self):
        e = discretize_prior(PriorSpec("uniform-ball", atom_count=800, seed=3, symmetrize=True))
        assert e.size == 800
        np.testing.assert_allclose(e.weights @ e.bloch, 0, atol=1e-15)

    def test_invalid_specs(self):
        with pytest.raises(InvalidPriorError):
            PriorSpec("jeffreys")
        with pytest.raises(InvalidPriorError):
            PriorSpec("uniform-ball", atom_count=0)
        with pytest.raises(InvalidPriorError):
            PriorSpec("uniform-ball", atom_count=10, symmetrize=True)
        with pytest.raises(InvalidPriorError):
            discretize_prior(PriorSpec("atoms", parameters={"atoms": [{"weight": 0.5, "bloch": [0, 0, 0]}]}))
        with pytest.raises(InvalidPriorError):
            discretize_prior(PriorSpec("isotropic-radial", atom_count=10))
        with pytest.raises(InvalidPriorError):
            discretize_prior(
                PriorSpec("isotropic-radial", atom_count=10, parameters={"grid": [0, 1], "density": [0, 0]})
            )
