"""Exchangeable states as finite weighted ensembles of single-system states.

An :class:`Ensemble` ``{(w_i, rho_i)}`` stands for the exchangeable
``N``-system state ``sum_i w_i rho_i^{(x)N}`` for every ``N``. Weights are kept
in log space so that long measurement records never underflow.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import (
    as_density,
    bloch_from_density,
    check_dim,
    density_from_bloch,
    tensor_power,
)
from .errors import DimensionError, InvalidArgumentError
from .measurement import as_povm, likelihood_matrix
from .rng import make_rng

WEIGHT_TOL = 1e-12
SYMMETRY_TOL = 1e-10


def normalize_log_weights(log_weights):
    lw = np.asarray(log_weights, dtype=float)
    if lw.ndim != 1 or lw.size == 0:
        raise InvalidArgumentError("log weights must be a non-empty vector")
    if np.any(np.isnan(lw)) or np.any(lw == np.inf):
        raise InvalidArgumentError("log weights contain NaN or +inf")
    if not np.any(np.isfinite(lw)):
        raise InvalidArgumentError("all weights are zero")
    shift = np.max(lw)
    return lw - (shift + np.log(np.sum(np.exp(lw - shift))))


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Weighted atoms over single-system density operators.

    ``states`` has shape ``(n_atoms, dim, dim)``. Build instances with
    :meth:`from_atoms` or :meth:`from_bloch`, which validate every atom; the
    bare constructor only checks shapes and renormalises the log weights.
    """

    states: np.ndarray
    log_weights: np.ndarray

    def __post_init__(self):
        states = np.asarray(self.states, dtype=complex)
        if states.ndim != 3 or states.shape[1] != states.shape[2]:
            raise DimensionError(f"ensemble states must have shape (n, d, d), got {states.shape}")
        lw = normalize_log_weights(self.log_weights)
        if lw.shape[0] != states.shape[0]:
            raise DimensionError("need one weight per atom")
        states.flags.writeable = False
        lw.flags.writeable = False
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "log_weights", lw)

    @classmethod
    def from_atoms(cls, weights, states):
        weights = np.asarray(weights, dtype=float)
        if np.any(weights < 0) or not np.all(np.isfinite(weights)):
            raise InvalidArgumentError("weights must be finite and nonnegative")
        total = weights.sum()
        if abs(total - 1.0) > WEIGHT_TOL:
            raise InvalidArgumentError(f"weights sum to {total:.15g}, expected 1")
        states = np.stack([as_density(s) for s in states])
        with np.errstate(divide="ignore"):
            return cls(states, np.log(weights))

    @classmethod
    def from_bloch(cls, bloch, weights=None):
        bloch = np.atleast_2d(np.asarray(bloch, dtype=float))
        n = bloch.shape[0]
        if weights is None:
            lw = np.full(n, -np.log(n))
        else:
            weights = np.asarray(weights, dtype=float)
            if np.any(weights < 0) or abs(weights.sum() - 1.0) > WEIGHT_TOL:
                raise InvalidArgumentError("weights must be nonnegative and sum to 1")
            with np.errstate(divide="ignore"):
                lw = np.log(weights)
        return cls(density_from_bloch(bloch), lw)

    @classmethod
    def single(cls, state):
        return cls.from_atoms([1.0], [state])

    def with_log_weights(self, log_weights):
        """Same atoms, new (unnormalised) log weights."""
        new = Ensemble(self.states, log_weights)
        if "bloch" in self.__dict__:
            new.__dict__["bloch"] = self.__dict__["bloch"]
        return new

    @property
    def dim(self):
        return self.states.shape[-1]

    @property
    def size(self):
        return self.states.shape[0]

    def __len__(self):
        return self.size

    @property
    def weights(self):
        return np.exp(self.log_weights)

    @cached_property
    def bloch(self):
        """Atom Bloch vectors, shape ``(n_atoms, 3)``; qubit ensembles only."""
        if self.dim != 2:
            raise DimensionError("Bloch vectors are only defined for qubit ensembles")
        b = bloch_from_density(self.states)
        b.flags.writeable = False
        return b

    def effective_size(self):
        w = self.weights
        return float(1.0 / np.sum(w * w))


def marginal_state(e):
    """Single-system reduction ``sum_i w_i rho_i``."""
    return np.einsum("n,nij->ij", e.weights, e.states)


def expand_to_copies(e, n, *, cap=None):
    """Explicit ``d^n``-dimensional state ``sum_i w_i rho_i^{(x)n}``."""
    if n < 1:
        raise InvalidArgumentError("need n >= 1 copies")
    check_dim(e.dim**n, cap)
    if n == 1:
        return marginal_state(e)
    w = e.weights
    out = np.zeros((e.dim**n, e.dim**n), dtype=complex)
    for wi, rho in zip(w, e.states):
        if wi > 0:
            out += wi * tensor_power(rho, n, cap=cap)
    return out


def _num_subsystems(dim_total, d):
    n = int(round(np.log(dim_total) / np.log(d))) if d > 1 else 0
    if d < 2 or d**n != dim_total:
        raise DimensionError(f"dimension {dim_total} is not a power of {d}")
    return n


def is_permutation_invariant(r, d, tol=SYMMETRY_TOL):
    """True if ``r`` on ``n`` systems of dimension ``d`` commutes with every swap.

    Adjacent transpositions generate the symmetric group, so only ``n - 1``
    swaps are checked.
    """
    r = np.asarray(r, dtype=complex)
    n = _num_subsystems(r.shape[0], d)
    t = r.reshape([d] * (2 * n))
    for j in range(n - 1):
        axes = list(range(2 * n))
        axes[j], axes[j + 1] = axes[j + 1], axes[j]
        axes[n + j], axes[n + j + 1] = axes[n + j + 1], axes[n + j]
        if np.max(np.abs(np.transpose(t, axes) - t)) > tol:
            return False
    return True


@dataclass(frozen=True)
class MeasurementRecord:
    """Ordered ``(operation_id, outcome_index)`` pairs."""

    entries: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple((op, int(k)) for op, k in self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def counts(self):
        """Aggregated counts keyed by ``(operation_id, outcome)``."""
        return dict(Counter(self.entries))

    def outcome_counts(self, op_id, n_outcomes):
        c = self.counts()
        return np.array([c.get((op_id, k), 0) for k in range(n_outcomes)], dtype=np.int64)

    def validate(self, operations):
        """Check every entry against ``operations`` (a mapping id -> operation/POVM)."""
        for op_id, k in self.entries:
            if op_id not in operations:
                raise InvalidArgumentError(f"unknown operation id {op_id!r}")
            if not 0 <= k < len(operations[op_id]):
                raise InvalidArgumentError(f"outcome {k} out of range for operation {op_id!r}")


def sample_measurement_record(true_state, ops, shots, seed, *, stream=0, op_ids=None):
    """Simulate ``shots`` i.i.d. systems prepared in ``true_state``.

    Shot ``j`` is measured with ``ops[j % len(ops)]``. Operation ids default to
    list positions.
    """
    ops = list(ops)
    if not ops:
        raise InvalidArgumentError("need at least one operation")
    if shots < 0:
        raise InvalidArgumentError("shots must be >= 0")
    op_ids = list(range(len(ops))) if op_ids is None else list(op_ids)
    rho = as_density(true_state)
    cum = []
    for op in ops:
        p = likelihood_matrix(rho[None], as_povm(op))[0]
        c = np.cumsum(p)
        c[-1] = 1.0
        cum.append(c)
    u = make_rng(seed, stream).random(shots)
    which = np.arange(shots) % len(ops)
    outcomes = np.empty(shots, dtype=np.int64)
    for j, c in enumerate(cum):
        sel = which == j
        outcomes[sel] = np.searchsorted(c, u[sel], side="right")
    return MeasurementRecord(tuple((op_ids[w], int(k)) for w, k in zip(which, outcomes)))
