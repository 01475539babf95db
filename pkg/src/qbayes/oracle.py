"""Brute-force check of the ensemble Bayes rule on explicit multi-system states.

The oracle never touches ensemble weights after building the prior. It forms
the full ``n_total``-system state, applies the Kraus operators of a
measurement to the first system, renormalises and traces that system out.
The result must equal the reweighted ensemble expanded to ``n_total - 1``
copies.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .bayes import bayes_update
from .core import (
    check_dim,
    dagger,
    partial_trace,
    random_density,
    random_unitary,
    trace_distance,
)
from .ensemble import Ensemble, expand_to_copies
from .errors import DimensionError, ImpossibleOutcomeError, InvalidArgumentError
from .measurement import (
    IMPOSSIBLE_OUTCOME,
    QuantumOperation,
    as_povm,
    likelihood_matrix,
    projective_operation,
)
from .rng import make_rng

DEFAULT_TOLERANCE = 1e-10
DEFAULT_CASES = 200
MAX_ATOMS = 4
MAX_SUBSYSTEMS = 5


def _embed_first(ops, rest_dim):
    eye = np.eye(rest_dim, dtype=complex)
    return [np.kron(a, eye) for a in ops]


def _measure_first(rho, d, n_total, op, outcome, pre_unitary=None):
    """Unnormalised ``sum_l (A_kl x 1) rho (A_kl x 1)^dag`` with optional pre-rotation."""
    if op.dim != d:
        raise DimensionError(f"operation dim {op.dim} does not match subsystem dim {d}")
    if not 0 <= outcome < len(op):
        raise InvalidArgumentError(f"outcome {outcome} out of range")
    if pre_unitary is not None:
        u = np.asarray(pre_unitary, dtype=complex)
        k = int(round(np.log(u.shape[0]) / np.log(d)))
        if d**k != u.shape[0] or k > n_total:
            raise DimensionError("pre_unitary must act on the first k subsystems")
        big = np.kron(u, np.eye(d ** (n_total - k), dtype=complex))
        rho = big @ rho @ dagger(big)
    out = np.zeros_like(rho)
    for a in _embed_first(op.kraus[outcome], d ** (n_total - 1)):
        out += a @ rho @ dagger(a)
    return out


def brute_force_posterior(prior, n_total, op, outcome, *, pre_unitary=None, cap=None):
    """State of systems ``2..n_total`` after outcome ``outcome`` on system 1, and ``p_k``.

    ``pre_unitary`` (acting on the first few systems) is applied to the prior
    state before measuring; it is used to show what breaks under entanglement.
    """
    if n_total < 2:
        raise InvalidArgumentError("need n_total >= 2 (one measured, at least one kept)")
    d = prior.dim
    check_dim(d**n_total, cap)
    rho = expand_to_copies(prior, n_total, cap=cap)
    unnorm = _measure_first(rho, d, n_total, op, outcome, pre_unitary)
    p_k = float(np.trace(unnorm).real)
    if p_k < IMPOSSIBLE_OUTCOME:
        raise ImpossibleOutcomeError(f"outcome {outcome} has probability {p_k:.3g}")
    post = partial_trace(unnorm / p_k, [d] * n_total, range(1, n_total))
    return post, p_k


@dataclass(frozen=True)
class EquivalenceReport:
    p_k_bayes: float
    p_k_brute: float
    trace_distance_posterior: float
    marginal_distances: tuple
    passed: bool
    tolerance: float

    def to_dict(self):
        d = asdict(self)
        d["marginal_distances"] = list(self.marginal_distances)
        return d


def equivalence_report(prior, n_total, op, outcome, tolerance=DEFAULT_TOLERANCE, *, pre_unitary=None, cap=None):
    """Compare the ensemble-level posterior with the brute-force one.

    Besides the full ``(n_total - 1)``-system trace distance, the single-system
    marginal of every remaining system is compared as well.
    """
    brute, p_brute = brute_force_posterior(prior, n_total, op, outcome, pre_unitary=pre_unitary, cap=cap)
    posterior, p_bayes = bayes_update(prior, op, outcome)
    bayes_state = expand_to_copies(posterior, n_total - 1, cap=cap)
    dist = trace_distance(brute, bayes_state)
    d = prior.dim
    n = n_total - 1
    marginals = tuple(
        trace_distance(partial_trace(brute, [d] * n, [j]), partial_trace(bayes_state, [d] * n, [j]))
        for j in range(n)
    )
    passed = (
        dist <= tolerance
        and all(m <= tolerance for m in marginals)
        and abs(p_bayes - p_brute) <= tolerance
    )
    return EquivalenceReport(p_bayes, p_brute, dist, marginals, bool(passed), float(tolerance))


def probability_triple_check(prior, op, outcome, n_total, *, cap=None):
    """Outcome probability computed three ways.

    Returns ``(full, marginal, ensemble)``: the trace of the Kraus-updated
    ``n_total``-system state, ``tr(E_k rho1)`` with ``rho1`` the reduced state
    of system 1, and the ensemble average ``sum_i w_i tr(E_k rho_i)``.
    """
    d = prior.dim
    check_dim(d**n_total, cap)
    rho = expand_to_copies(prior, n_total, cap=cap)
    full = float(np.trace(_measure_first(rho, d, n_total, op, outcome)).real)
    povm = as_povm(op)
    rho1 = partial_trace(rho, [d] * n_total, [0]) if n_total > 1 else rho
    marginal = float(np.trace(povm.effects[outcome] @ rho1).real)
    ensemble = float(np.dot(prior.weights, likelihood_matrix(prior.states, povm)[:, outcome]))
    return full, marginal, ensemble


def record_probability(prior, ops, outcomes, *, cap=None):
    """Brute-force probability of a whole record, one system per entry.

    ``ops[j]`` with outcome ``outcomes[j]`` acts on system ``j`` of
    ``expand_to_copies(prior, len(ops) + 1)``; the extra system is left alone.
    """
    m = len(ops)
    d = prior.dim
    n_total = m + 1
    rho = expand_to_copies(prior, n_total, cap=cap)
    for j, (op, k) in enumerate(zip(ops, outcomes)):
        left = np.eye(d**j, dtype=complex)
        right = np.eye(d ** (n_total - j - 1), dtype=complex)
        new = np.zeros_like(rho)
        for a in op.kraus[k]:
            big = np.kron(np.kron(left, a), right)
            new += big @ rho @ dagger(big)
        rho = new
    return float(np.trace(rho).real)


def random_kraus_operation(dim, rng, n_outcomes=2, kraus_per_outcome=1):
    """Operation read off a Haar-random unitary on system (x) ancilla.

    The isometry ``V = U (1 x |0>)`` is sliced along the ancilla into
    ``n_outcomes * kraus_per_outcome`` Kraus operators, grouped per outcome.
    """
    anc = n_outcomes * kraus_per_outcome
    u = random_unitary(dim * anc, rng)
    v = u[:, ::anc]  # columns s * anc + 0
    ops = [v[j::anc, :] for j in range(anc)]  # rows s' * anc + j
    kraus = tuple(ops[k * kraus_per_outcome:(k + 1) * kraus_per_outcome] for k in range(n_outcomes))
    return QuantumOperation(kraus)


def random_projective_operation(dim, rng):
    return projective_operation(random_unitary(dim, rng))


def random_ensemble(dim, n_atoms, rng):
    w = rng.dirichlet(np.ones(n_atoms))
    w = w / w.sum()
    states = [random_density(dim, rng, rank=int(rng.integers(1, dim + 1))) for _ in range(n_atoms)]
    return Ensemble.from_atoms(w, states)


@dataclass(frozen=True)
class OracleCase:
    index: int
    prior: Ensemble
    n_total: int
    op: QuantumOperation
    outcome: int
    op_kind: str

    def describe(self):
        return f"d={self.prior.dim} atoms={self.prior.size} n_total={self.n_total} op={self.op_kind} outcome={self.outcome}"


def random_case(seed, index):
    """Seeded random oracle case: qubits up to 5 systems, occasionally qutrits up to 3."""
    rng = make_rng(seed, (index, 0))
    if rng.random() < 0.2:
        d, n_total = 3, int(rng.integers(2, 4))
    else:
        d, n_total = 2, int(rng.integers(2, MAX_SUBSYSTEMS + 1))
    prior = random_ensemble(d, int(rng.integers(1, MAX_ATOMS + 1)), rng)
    choice = int(rng.integers(3))
    if choice == 0:
        op, kind = random_projective_operation(d, rng), "projective"
    elif choice == 1:
        op, kind = random_kraus_operation(d, rng, 2, 1), "kraus-2x1"
    else:
        op, kind = random_kraus_operation(d, rng, 2, 2), "kraus-2x2"
    probs = np.dot(prior.weights, likelihood_matrix(prior.states, as_povm(op)))
    probs = np.where(probs > 1e-6, probs, 0.0)
    outcome = int(rng.choice(len(probs), p=probs / probs.sum()))
    return OracleCase(index, prior, n_total, op, outcome, kind)


def run_oracle(seed=0, cases=DEFAULT_CASES, tolerance=DEFAULT_TOLERANCE):
    """Run ``cases`` random oracle cases; yields ``(case, report, triple)`` tuples."""
    for i in range(cases):
        case = random_case(seed, i)
        report = equivalence_report(case.prior, case.n_total, case.op, case.outcome, tolerance)
        triple = probability_triple_check(case.prior, case.op, case.outcome, case.n_total)
        yield case, report, triple
