import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbayes.bayes import qubit_counts_update
from qbayes.core import (
    PAULI_X,
    PAULI_Z,
    density_from_bloch,
    random_density,
    tensor_power,
    von_neumann_entropy,
)
from qbayes.ensemble import Ensemble
from qbayes.errors import InvalidArgumentError, NoInteriorSolutionError
from qbayes.maxent import (
    ConstraintSet,
    bayes_vs_maxent_report,
    local_constraints,
    maxent_qubit_z,
    maxent_state,
    random_feasible_states,
    spin_constraints,
)
from qbayes.priors import PriorSpec, discretize_prior

Z = (0.0, 0.0, 1.0)
X = (1.0, 0.0, 0.0)
GRID = np.round(np.arange(-0.9, 0.91, 0.1), 10)


class TestMaxentState:
    def test_unconstrained(self):
        sol = maxent_state(ConstraintSet((), ()), 2)
        np.testing.assert_allclose(sol.state, np.eye(2) / 2, atol=1e-15)
        assert sol.entropy == pytest.approx(np.log(2), abs=1e-14)

    def test_unconstrained_qutrit(self):
        sol = maxent_state(ConstraintSet((), ()), 3)
        assert sol.entropy == pytest.approx(np.log(3), abs=1e-14)

    def test_z_point_eight(self):
        sol = maxent_state(spin_constraints([Z], [0.8]), 2)
        np.testing.assert_allclose(sol.state, density_from_bloch([0, 0, 0.8]), atol=1e-8)
        assert np.max(np.abs(sol.residuals)) <= 1e-10

    def test_two_paulis(self, rng):
        c = ConstraintSet((PAULI_Z, PAULI_X), (0.3, 0.4))
        sol = maxent_state(c, 2)
        assert np.max(np.abs(sol.residuals)) <= 1e-10
        np.testing.assert_allclose(sol.state, density_from_bloch([0.4, 0, 0.3]), atol=1e-8)
        others = random_feasible_states(c, sol.state, 1000, rng)
        assert max(np.max(np.abs(c.residuals(r))) for r in others) <= 1e-10
        assert min(sol.entropy - von_neumann_entropy(r) for r in others) >= -1e-8

    @pytest.mark.parametrize("e_z", GRID)
    def test_closed_form_grid(self, e_z):
        sol = maxent_state(spin_constraints([Z], [e_z]), 2)
        np.testing.assert_allclose(sol.state, maxent_qubit_z(e_z), atol=1e-8)

    @pytest.mark.parametrize("e_z", [-0.7, 0.2, 0.6])
    @pytest.mark.parametrize("n", [2, 3])
    def test_product_structure(self, e_z, n):
        single = maxent_state(spin_constraints([Z], [e_z]), 2).state
        multi = maxent_state(local_constraints(PAULI_Z, e_z, n), 2**n).state
        np.testing.assert_allclose(multi, tensor_power(single, n), atol=1e-8)

    def test_dual_decreases(self):
        sol = maxent_state(ConstraintSet((PAULI_Z, PAULI_X), (0.55, -0.6)), 2)
        assert np.all(np.diff(sol.dual_history) <= 1e-15)
        assert sol.iterations >= 1

    @pytest.mark.parametrize("e_z", [1.0, -1.0, 1.2])
    def test_boundary_and_infeasible(self, e_z):
        with pytest.raises(NoInteriorSolutionError):
            maxent_state(spin_constraints([Z], [e_z]), 2)

    def test_infeasible_pair(self):
        with pytest.raises(NoInteriorSolutionError):
            maxent_state(ConstraintSet((PAULI_Z, PAULI_X), (0.8, 0.8)), 2)

    def test_non_hermitian(self):
        with pytest.raises(InvalidArgumentError):
            ConstraintSet((np.array([[0, 1], [0, 0]]),), (0.1,))

    def test_redundant_constraints(self):
        sol = maxent_state(ConstraintSet((PAULI_Z, 2 * PAULI_Z), (0.4, 0.8)), 2)
        np.testing.assert_allclose(sol.state, density_from_bloch([0, 0, 0.4]), atol=1e-8)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32))
    def test_residuals_random_feasible_targets(self, seed):
        g = np.random.default_rng(seed)
        d = 3
        obs = []
        for _ in range(2):
            a = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
            obs.append(a + a.conj().T)
        ref = 0.5 * random_density(d, g) + 0.5 * np.eye(d) / d
        targets = [np.trace(o @ ref).real for o in obs]
        c = ConstraintSet(tuple(obs), tuple(targets))
        sol = maxent_state(c, d)
        assert np.max(np.abs(sol.residuals)) <= 1e-10
        assert sol.entropy >= von_neumann_entropy(ref) - 1e-8


class TestClosedForm:
    def test_examples(self):
        np.testing.assert_allclose(maxent_qubit_z(0), np.eye(2) / 2, atol=0)
        np.testing.assert_allclose(maxent_qubit_z(1), np.diag([1, 0]), atol=0)
        np.testing.assert_allclose(maxent_qubit_z(0.5), np.diag([0.75, 0.25]), atol=1e-16)

    def test_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            maxent_qubit_z(1.01)


class TestComparison:
    def test_single_atom(self):
        rec = bayes_vs_maxent_report(Ensemble.from_bloch([[0, 0, 0.3]]), X, 10)
        assert rec.marginal_distance <= 1e-10
        assert rec.predictive_tv <= 1e-10
        assert rec.bayes_learning_shift == 0 and rec.maxent_learning_shift == 0

    def test_isotropic_balanced_counts(self):
        prior = discretize_prior(PriorSpec("uniform-ball", atom_count=10_000, seed=1, symmetrize=True))
        rec = bayes_vs_maxent_report(qubit_counts_update(prior, Z, 5000, 5000), X, 10)
        assert rec.marginal_distance < 0.02
        assert rec.predictive_tv > 0.1
        assert rec.maxent_learning_shift == 0
        assert rec.bayes_learning_shift > 0

    def test_x_zero_prior(self, rng):
        pts = rng.uniform(-0.7, 0.7, size=(40, 3))
        pts[:, 0] = 0
        rec = bayes_vs_maxent_report(qubit_counts_update(Ensemble.from_bloch(pts), Z, 6, 2), X, 10)
        assert rec.predictive_tv < 1e-10

    def test_boundary_posterior(self):
        rec = bayes_vs_maxent_report(Ensemble.from_bloch([[0, 0, 1.0]]), X, 4)
        np.testing.assert_allclose(rec.maxent_marginal, np.diag([1, 0]), atol=1e-12)

    def test_record_serializes(self):
        import json

        d = bayes_vs_maxent_report(Ensemble.from_bloch([[0, 0, 0.3], [0.1, 0, -0.2]]), X, 3).to_dict()
        json.dumps(d)
        assert len(d["bayes_predictive"]) == 4
