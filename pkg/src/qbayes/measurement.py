"""Generalized measurements: POVMs, Kraus-form operations and their action on states."""

from dataclasses import dataclass, field

import numpy as np

from .core import (
    PSD_TOL,
    as_matrix,
    dagger,
    eigh_hermitian,
    eigvalsh_hermitian,
    is_hermitian,
    spin_projector,
)
from .errors import DimensionError, ImpossibleOutcomeError, InvalidArgumentError, InvalidStateError

COMPLETENESS_TOL = 1e-10
PROBABILITY_TOL = 1e-12
IMPOSSIBLE_OUTCOME = 1e-15

SIC_VERTICES = np.array(
    [
        [0.0, 0.0, 1.0],
        [2.0 * np.sqrt(2.0) / 3.0, 0.0, -1.0 / 3.0],
        [-np.sqrt(2.0) / 3.0, np.sqrt(2.0 / 3.0), -1.0 / 3.0],
        [-np.sqrt(2.0) / 3.0, -np.sqrt(2.0 / 3.0), -1.0 / 3.0],
    ]
)


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Povm:
    """Ordered list of effects ``E_k``; outcome ``k`` is the list index."""

    effects: np.ndarray
    labels: tuple = None
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        effects = [as_matrix(e) for e in self.effects]
        if not effects:
            raise InvalidArgumentError("a POVM needs at least one effect")
        dim = effects[0].shape[0]
        if any(e.shape != (dim, dim) for e in effects):
            raise DimensionError("POVM effects have different dimensions")
        for k, e in enumerate(effects):
            if not is_hermitian(e, 1e-10):
                raise InvalidArgumentError(f"effect {k} is not Hermitian")
            if eigvalsh_hermitian(e)[0] < -PSD_TOL:
                raise InvalidArgumentError(f"effect {k} is not positive semidefinite")
        total = np.sum(effects, axis=0)
        if np.max(np.abs(total - np.eye(dim))) > COMPLETENESS_TOL:
            raise InvalidArgumentError("POVM effects do not sum to the identity")
        object.__setattr__(self, "effects", _frozen(np.stack(effects)))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(effects):
                raise InvalidArgumentError("need one label per effect")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return self.effects.shape[-1]

    def __len__(self):
        return self.effects.shape[0]


@dataclass(frozen=True, eq=False)
class QuantumOperation:
    """Measurement in Kraus form: ``kraus[k]`` is the list of operators for outcome ``k``."""

    kraus: tuple
    labels: tuple = None
    name: str = field(default=None, compare=False)

    def __post_init__(self):
        outcomes = []
        for k, ops in enumerate(self.kraus):
            ops = np.asarray(ops, dtype=complex)
            if ops.ndim == 2:
                ops = ops[None]
            if ops.ndim != 3 or ops.shape[0] < 1 or ops.shape[1] != ops.shape[2]:
                raise DimensionError(f"outcome {k}: expected a list of square Kraus operators")
            if not np.all(np.isfinite(ops)):
                raise InvalidArgumentError(f"outcome {k}: non-finite Kraus entries")
            outcomes.append(_frozen(ops))
        if not outcomes:
            raise InvalidArgumentError("an operation needs at least one outcome")
        dim = outcomes[0].shape[-1]
        if any(ops.shape[-1] != dim for ops in outcomes):
            raise DimensionError("Kraus operators have different dimensions")
        total = sum(np.einsum("lji,ljk->ik", ops.conj(), ops) for ops in outcomes)
        if np.max(np.abs(total - np.eye(dim))) > COMPLETENESS_TOL:
            raise InvalidArgumentError("Kraus operators are not trace preserving over all outcomes")
        object.__setattr__(self, "kraus", tuple(outcomes))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(outcomes):
                raise InvalidArgumentError("need one label per outcome")
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return self.kraus[0].shape[-1]

    def __len__(self):
        return len(self.kraus)


def povm_from_operation(op):
    """Effects ``E_k = sum_l A_kl^dag A_kl`` of a Kraus-form operation."""
    effects = [np.einsum("lji,ljk->ik", ops.conj(), ops) for ops in op.kraus]
    return Povm(effects, labels=op.labels, name=op.name)


def as_povm(m):
    if isinstance(m, Povm):
        return m
    if isinstance(m, QuantumOperation):
        return povm_from_operation(m)
    raise TypeError(f"expected Povm or QuantumOperation, got {type(m).__name__}")


def operation_from_povm(povm):
    """Lüders instrument: one Kraus operator ``sqrt(E_k)`` per outcome."""
    kraus = []
    for e in povm.effects:
        w, v = eigh_hermitian(e)
        kraus.append([(v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v)])
    return QuantumOperation(tuple(kraus), labels=povm.labels, name=povm.name)


def _clamp_probabilities(p):
    p = np.asarray(p, dtype=float)
    if np.any(p < -PROBABILITY_TOL) or np.any(p > 1.0 + PROBABILITY_TOL):
        raise InvalidStateError(
            f"outcome probability outside [0, 1]: min {p.min():.3g}, max {p.max():.3g}"
        )
    return np.clip(p, 0.0, 1.0)


def likelihood_matrix(states, povm):
    """``L[i, k] = tr(E_k rho_i)`` for a stack of states of shape ``(n, d, d)``."""
    povm = as_povm(povm)
    states = np.asarray(states, dtype=complex)
    if states.shape[-1] != povm.dim:
        raise DimensionError(f"state dim {states.shape[-1]} does not match POVM dim {povm.dim}")
    return _clamp_probabilities(np.einsum("kij,nji->nk", povm.effects, states).real)


def outcome_probabilities(r, povm):
    """Born-rule probabilities ``p_k = tr(E_k r)``, clamped into ``[0, 1]``."""
    r = as_matrix(r)
    return likelihood_matrix(r[None], povm)[0]


def apply_operation(r, op, outcome):
    """Unnormalised post-measurement state ``F_k(r)`` and its probability ``tr F_k(r)``.

    Raises ImpossibleOutcomeError when the probability is below 1e-15, because
    the normalised state is then undefined.
    """
    r = as_matrix(r)
    if r.shape[0] != op.dim:
        raise DimensionError(f"state dim {r.shape[0]} does not match operation dim {op.dim}")
    if not 0 <= outcome < len(op):
        raise InvalidArgumentError(f"outcome {outcome} out of range for {len(op)} outcomes")
    ops = op.kraus[outcome]
    out = np.einsum("lij,jk,lmk->im", ops, r, ops.conj())
    p = float(np.trace(out).real)
    if p < IMPOSSIBLE_OUTCOME:
        raise ImpossibleOutcomeError(f"outcome {outcome} has probability {p:.3g}")
    return out, p


def _unit_axis(axis):
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-12:
        raise InvalidArgumentError(f"axis must be a unit 3-vector, got {axis!r}")
    return n


def projective_spin_povm(axis):
    """Projective spin measurement along ``axis``; outcome 0 is +1, outcome 1 is -1."""
    n = _unit_axis(axis)
    return QuantumOperation(
        ([spin_projector(n, +1)], [spin_projector(n, -1)]),
        labels=("+1", "-1"),
    )


def projective_operation(basis):
    """Von Neumann measurement in the orthonormal basis given by the columns of ``basis``."""
    basis = as_matrix(basis)
    projectors = [[np.outer(basis[:, j], basis[:, j].conj())] for j in range(basis.shape[1])]
    return QuantumOperation(tuple(projectors))


def identity_operation(dim):
    return QuantumOperation(([np.eye(dim, dtype=complex)],))


def tetrahedral_sic_povm():
    """Qubit SIC-POVM with effects ``(1 + n_j.sigma) / 4`` on the tetrahedron vertices."""
    effects = [0.5 * spin_projector(n, +1) for n in SIC_VERTICES]
    return Povm(effects, labels=("t0", "t1", "t2", "t3"), name="sic")
