import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bloch, bloch_vectors, unit_axes
from qbayes.core import random_density, random_unitary
from qbayes.errors import DimensionError, ImpossibleOutcomeError, InvalidArgumentError
from qbayes.measurement import (
    Povm,
    QuantumOperation,
    apply_operation,
    identity_operation,
    operation_from_povm,
    outcome_probabilities,
    povm_from_operation,
    projective_operation,
    projective_spin_povm,
    tetrahedral_sic_povm,
)
from qbayes.oracle import random_kraus_operation

Z = (0.0, 0.0, 1.0)
X = (1.0, 0.0, 0.0)


def _amplitude_damping():
    a0 = np.diag([1.0, np.sqrt(0.5)])
    a1 = np.array([[0.0, np.sqrt(0.5)], [0.0, 0.0]])
    return QuantumOperation(([a0], [a1]))


def _all_operations(rng):
    return [
        identity_operation(2),
        projective_spin_povm(Z),
        projective_spin_povm(X),
        _amplitude_damping(),
        operation_from_povm(tetrahedral_sic_povm()),
        random_kraus_operation(2, rng, 2, 1),
        random_kraus_operation(2, rng, 3, 2),
    ]


class TestPovmFromOperation:
    def test_identity(self):
        p = povm_from_operation(identity_operation(2))
        assert len(p) == 1
        np.testing.assert_allclose(p.effects[0], np.eye(2), atol=0)

    def test_projective_effects_are_projectors(self):
        p = povm_from_operation(projective_spin_povm(Z))
        np.testing.assert_allclose(p.effects[0], np.diag([1, 0]), atol=1e-15)
        np.testing.assert_allclose(p.effects[1], np.diag([0, 1]), atol=1e-15)

    def test_amplitude_damping(self):
        p = povm_from_operation(_amplitude_damping())
        np.testing.assert_allclose(p.effects[0], np.diag([1, 0.5]), atol=1e-15)
        np.testing.assert_allclose(p.effects[1], np.diag([0, 0.5]), atol=1e-15)


class TestValidation:
    def test_incomplete_povm(self):
        with pytest.raises(InvalidArgumentError):
            Povm([np.diag([1.0, 0.0])])

    def test_negative_effect(self):
        with pytest.raises(InvalidArgumentError):
            Povm([np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])])

    def test_non_hermitian_effect(self):
        e = np.array([[0.5, 0.1], [0.0, 0.5]])
        with pytest.raises(InvalidArgumentError):
            Povm([e, np.eye(2) - e])

    def test_non_trace_preserving_kraus(self):
        with pytest.raises(InvalidArgumentError):
            QuantumOperation(([np.diag([1.0, 0.5])],))

    def test_mixed_dims(self):
        with pytest.raises(DimensionError):
            Povm([np.eye(2), np.zeros((3, 3))])

    def test_non_unit_axis(self):
        with pytest.raises(InvalidArgumentError):
            projective_spin_povm((0, 0, 2))


class TestOutcomeProbabilities:
    def test_identity(self):
        np.testing.assert_allclose(outcome_probabilities(bloch(0.1, 0.2, 0.3), povm_from_operation(identity_operation(2))), [1])

    def test_mixed(self):
        np.testing.assert_allclose(outcome_probabilities(np.eye(2) / 2, projective_spin_povm(Z)), [0.5, 0.5], atol=1e-15)

    def test_half_z(self):
        np.testing.assert_allclose(outcome_probabilities(bloch(0, 0, 0.5), projective_spin_povm(Z)), [0.75, 0.25], atol=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            outcome_probabilities(np.eye(3) / 3, projective_spin_povm(Z))

    @given(bloch_vectors())
    def test_spin_z_and_x(self, b):
        r = bloch(*b)
        np.testing.assert_allclose(outcome_probabilities(r, projective_spin_povm(Z)), [(1 + b[2]) / 2, (1 - b[2]) / 2], atol=1e-14)
        np.testing.assert_allclose(outcome_probabilities(r, projective_spin_povm(X)), [(1 + b[0]) / 2, (1 - b[0]) / 2], atol=1e-14)

    @given(bloch_vectors(), unit_axes())
    def test_spin_general_axis(self, b, n):
        p = outcome_probabilities(bloch(*b), projective_spin_povm(n))
        assert p[0] == pytest.approx((1 + n @ b) / 2, abs=1e-12)

    def test_pole(self):
        np.testing.assert_allclose(outcome_probabilities(np.diag([1.0, 0.0]), projective_spin_povm(Z)), [1, 0], atol=0)


class TestApplyOperation:
    def test_identity(self):
        r = bloch(0.3, -0.1, 0.2)
        out, p = apply_operation(r, identity_operation(2), 0)
        np.testing.assert_allclose(out, r, atol=1e-15)
        assert p == pytest.approx(1, abs=1e-15)

    def test_projective_plus(self):
        out, p = apply_operation(bloch(0, 0, 0.5), projective_spin_povm(Z), 0)
        assert p == pytest.approx(0.75, abs=1e-15)
        np.testing.assert_allclose(out, 0.75 * np.diag([1, 0]), atol=1e-15)

    def test_impossible(self):
        with pytest.raises(ImpossibleOutcomeError):
            apply_operation(np.diag([1.0, 0.0]), projective_spin_povm(Z), 1)

    def test_bad_outcome(self):
        with pytest.raises(InvalidArgumentError):
            apply_operation(np.eye(2) / 2, projective_spin_povm(Z), 2)

    def test_total_probability_is_one(self, rng):
        for op in _all_operations(rng):
            for _ in range(100):
                r = random_density(2, rng)
                total = sum(np.trace(_unnormalized(r, op, k)).real for k in range(len(op)))
                assert abs(total - 1) <= 1e-10

    def test_probability_matches_povm(self, rng):
        for op in _all_operations(rng):
            povm = povm_from_operation(op)
            for _ in range(20):
                r = random_density(2, rng)
                probs = outcome_probabilities(r, povm)
                for k in range(len(op)):
                    if probs[k] > 1e-15:
                        assert apply_operation(r, op, k)[1] == pytest.approx(probs[k], abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32), st.integers(0, 1))
    def test_projective_idempotent(self, seed, k):
        g = np.random.default_rng(seed)
        op = projective_operation(random_unitary(2, g))
        r = random_density(2, g)
        out, p = apply_operation(r, op, k)
        if p < 1e-9:
            return
        first = out / p
        again, q = apply_operation(first, op, k)
        np.testing.assert_allclose(again / q, first, atol=1e-12)


def _unnormalized(r, op, k):
    return sum(a @ r @ a.conj().T for a in op.kraus[k])


class TestSic:
    def test_traces(self):
        np.testing.assert_allclose([np.trace(e).real for e in tetrahedral_sic_povm().effects], [0.5] * 4, atol=1e-15)

    def test_isotropic(self):
        np.testing.assert_allclose(outcome_probabilities(np.eye(2) / 2, tetrahedral_sic_povm()), [0.25] * 4, atol=1e-15)

    def test_informationally_complete(self):
        effects = tetrahedral_sic_povm().effects
        gram = np.array([[np.trace(a @ b).real for b in effects] for a in effects])
        assert np.linalg.matrix_rank(gram, tol=1e-10) == 4

    def test_symmetric_overlaps(self):
        effects = tetrahedral_sic_povm().effects
        for i in range(4):
            for j in range(4):
                expected = 0.25 if i == j else 1 / 12
                assert np.trace(effects[i] @ effects[j]).real == pytest.approx(expected, abs=1e-14)


class TestLudersInstrument:
    def test_effects_round_trip(self, rng):
        povm = tetrahedral_sic_povm()
        back = povm_from_operation(operation_from_povm(povm))
        np.testing.assert_allclose(back.effects, povm.effects, atol=1e-14)
