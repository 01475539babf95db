"""Posterior updating of ensemble priors, posterior moments and predictive counts.

An update only reweights atoms: the posterior keeps every atom state of the
prior and multiplies its weight by the single-system likelihood
``tr(E_k rho_i)``. Weight arithmetic happens in log space with one
normalisation per call.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp, xlogy

from .core import check_dim, tensor_power
from .ensemble import marginal_state
from .errors import DimensionError, ImpossibleOutcomeError, InvalidArgumentError
from .measurement import IMPOSSIBLE_OUTCOME, as_povm, likelihood_matrix

MAX_PREDICTIVE_SHOTS = 10_000
_CHUNK = 1 << 22


def classical_bayes(prior, likelihood):
    """Posterior ``l_i p_i / sum_j l_j p_j`` over a finite hypothesis set."""
    prior = np.asarray(prior, dtype=float)
    likelihood = np.asarray(likelihood, dtype=float)
    if prior.shape != likelihood.shape:
        raise DimensionError("prior and likelihood must have the same length")
    if np.any(likelihood < 0):
        raise InvalidArgumentError("likelihoods must be nonnegative")
    joint = likelihood * prior
    evidence = joint.sum()
    if not evidence > 0:
        raise ImpossibleOutcomeError("data has zero probability under the prior")
    return joint / evidence


def _check_outcome(povm, outcome):
    if not 0 <= outcome < len(povm):
        raise InvalidArgumentError(f"outcome {outcome} out of range for {len(povm)} outcomes")


def _reweight(prior, likelihood):
    p_k = float(np.dot(prior.weights, likelihood))
    if p_k < IMPOSSIBLE_OUTCOME:
        raise ImpossibleOutcomeError(
            f"outcome has prior probability {p_k:.3g}; the prior excludes the observed data"
        )
    with np.errstate(divide="ignore"):
        return prior.with_log_weights(prior.log_weights + np.log(likelihood)), p_k


def bayes_update(prior, povm, outcome):
    """Posterior ensemble after observing ``outcome`` on one system.

    Returns ``(posterior, p_k)`` where ``p_k`` is the prior probability of the
    outcome. ``povm`` may also be a QuantumOperation; only its effects matter.
    """
    povm = as_povm(povm)
    if povm.dim != prior.dim:
        raise DimensionError(f"POVM dim {povm.dim} does not match ensemble dim {prior.dim}")
    _check_outcome(povm, outcome)
    lik = likelihood_matrix(prior.states, povm)[:, outcome]
    return _reweight(prior, lik)


def collective_likelihoods(prior, povm, m, *, cap=None):
    """``L[i, k] = tr(E_k rho_i^{(x)m})`` for a POVM acting jointly on ``m`` systems."""
    povm = as_povm(povm)
    if m < 1:
        raise InvalidArgumentError("m must be >= 1")
    check_dim(prior.dim**m, cap)
    if povm.dim != prior.dim**m:
        raise DimensionError(f"POVM dim {povm.dim} != {prior.dim}^{m}")
    if m == 1:
        return likelihood_matrix(prior.states, povm)
    powers = np.stack([tensor_power(s, m, cap=cap) for s in prior.states])
    return likelihood_matrix(powers, povm)


def bayes_update_collective(prior, povm, m, outcome, *, cap=None):
    """Update after a joint measurement on ``m`` fresh systems."""
    povm = as_povm(povm)
    _check_outcome(povm, outcome)
    lik = collective_likelihoods(prior, povm, m, cap=cap)[:, outcome]
    return _reweight(prior, lik)


def counts_update(prior, povm, counts):
    """Batch update from outcome counts of one POVM.

    Equivalent to one :func:`bayes_update` per recorded outcome, in any order.
    Returns ``(posterior, log_evidence)``; ``log_evidence`` is the log prior
    probability of one particular ordered sequence with these counts.
    """
    povm = as_povm(povm)
    if povm.dim != prior.dim:
        raise DimensionError(f"POVM dim {povm.dim} does not match ensemble dim {prior.dim}")
    counts = np.asarray(counts, dtype=float)
    if counts.shape != (len(povm),) or np.any(counts < 0):
        raise InvalidArgumentError("need one nonnegative count per outcome")
    lik = likelihood_matrix(prior.states, povm)
    with np.errstate(divide="ignore"):
        log_lik = np.sum(xlogy(counts[None, :], lik), axis=1)
    return _reweight_log(prior, log_lik)


def _reweight_log(prior, log_lik):
    joint = prior.log_weights + log_lik
    log_evidence = float(logsumexp(joint))
    if not np.isfinite(log_evidence):
        raise ImpossibleOutcomeError("every atom assigns zero probability to the data")
    return prior.with_log_weights(joint), log_evidence


def spin_log_likelihood(bloch, axis, n_plus, n_minus):
    """Log of ``((1 + n.b)/2)^{n_plus} ((1 - n.b)/2)^{n_minus}`` per Bloch vector."""
    a = np.clip(0.5 * (1.0 + bloch @ np.asarray(axis, dtype=float)), 0.0, 1.0)
    with np.errstate(divide="ignore"):
        return xlogy(n_plus, a) + xlogy(n_minus, 1.0 - a)


def qubit_counts_update(prior, axis, n_plus, n_minus, *, return_evidence=False):
    """Posterior after ``n_plus`` results +1 and ``n_minus`` results -1 along ``axis``."""
    if prior.dim != 2:
        raise DimensionError("qubit_counts_update needs a qubit ensemble")
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > 1e-12:
        raise InvalidArgumentError(f"axis must be a unit 3-vector, got {axis!r}")
    if n_plus < 0 or n_minus < 0:
        raise InvalidArgumentError("counts must be nonnegative")
    post, log_ev = _reweight_log(prior, spin_log_likelihood(prior.bloch, axis, n_plus, n_minus))
    return (post, log_ev) if return_evidence else post


@dataclass(frozen=True)
class PosteriorMoments:
    mean_bloch: np.ndarray
    mean_state: np.ndarray
    variances: np.ndarray


def posterior_moments(e):
    """Weighted mean and per-component variance of the atoms' Bloch vectors."""
    if e.dim != 2:
        raise DimensionError("posterior moments are defined for qubit ensembles")
    w = e.weights
    b = e.bloch
    mean = w @ b
    var = np.clip(w @ (b - mean) ** 2, 0.0, None)
    return PosteriorMoments(mean_bloch=mean, mean_state=marginal_state(e), variances=var)


@dataclass(frozen=True)
class PredictiveDistribution:
    """Probabilities of ``N_plus = 0..n`` results +1 in ``n`` future shots."""

    n: int
    probabilities: np.ndarray

    def as_dict(self):
        return {k: float(p) for k, p in enumerate(self.probabilities)}


def _log_binomial_table(a, n):
    k = np.arange(n + 1)
    log_c = gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)
    with np.errstate(divide="ignore"):
        return log_c[None, :] + xlogy(k[None, :], a[:, None]) + xlogy(n - k[None, :], 1.0 - a[:, None])


def _check_n(n):
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidArgumentError("n must be a nonnegative integer")
    if n > MAX_PREDICTIVE_SHOTS:
        raise InvalidArgumentError(f"n is capped at {MAX_PREDICTIVE_SHOTS}")


def binomial_predictive(p_plus, n):
    """Count distribution implied by a product state with single-shot probability ``p_plus``."""
    _check_n(n)
    a = np.clip(np.atleast_1d(np.asarray(p_plus, dtype=float)), 0.0, 1.0)
    return PredictiveDistribution(int(n), np.exp(_log_binomial_table(a, n)[0]))


def posterior_predictive_counts(e, axis, n):
    """Mixture of binomials ``sum_i w_i C(n, k) a_i^k (1 - a_i)^(n - k)``, ``a_i = (1 + axis.b_i)/2``."""
    if e.dim != 2:
        raise DimensionError("posterior predictive counts need a qubit ensemble")
    _check_n(n)
    axis = np.asarray(axis, dtype=float)
    if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > 1e-12:
        raise InvalidArgumentError(f"axis must be a unit 3-vector, got {axis!r}")
    a = np.clip(0.5 * (1.0 + e.bloch @ axis), 0.0, 1.0)
    lw = e.log_weights
    probs = np.zeros(n + 1)
    step = max(1, _CHUNK // (n + 1))
    for start in range(0, a.shape[0], step):
        sl = slice(start, start + step)
        probs += np.exp(lw[sl, None] + _log_binomial_table(a[sl], n)).sum(axis=0)
    return PredictiveDistribution(int(n), probs)


def total_variation(p, q):
    p = np.asarray(getattr(p, "probabilities", p), dtype=float)
    q = np.asarray(getattr(q, "probabilities", q), dtype=float)
    if p.shape != q.shape:
        raise DimensionError("distributions have different supports")
    return float(0.5 * np.sum(np.abs(p - q)))
