"""Maximum-entropy state assignment and its comparison with Bayesian updating.

The solver minimises the convex dual ``log tr exp(-sum_j l_j O_j) + sum_j l_j e_j``
by damped Newton steps with backtracking. The Hessian is the Kubo-Mori
covariance of the observables, evaluated exactly in the eigenbasis of the
current Hamiltonian through divided differences of ``exp``.
"""

from dataclasses import dataclass

import numpy as np

from .bayes import (
    binomial_predictive,
    posterior_moments,
    posterior_predictive_counts,
    qubit_counts_update,
    total_variation,
)
from .core import (
    PAULIS,
    as_density,
    bloch_from_density,
    as_matrix,
    dagger,
    density_from_bloch,
    eigh_hermitian,
    eigvalsh_hermitian,
    is_hermitian,
    random_density,
    trace_distance,
    von_neumann_entropy,
)
from .ensemble import Ensemble, marginal_state
from .errors import DimensionError, InvalidArgumentError, NoInteriorSolutionError

MAX_ITERATIONS = 200
MULTIPLIER_LIMIT = 1e6
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class ConstraintSet:
    """Expectation-value constraints ``tr(rho O_j) = e_j``."""

    observables: tuple
    targets: tuple

    def __post_init__(self):
        obs = tuple(as_matrix(o) for o in self.observables)
        targets = tuple(float(t) for t in self.targets)
        if len(obs) != len(targets):
            raise InvalidArgumentError("need one target per observable")
        for j, o in enumerate(obs):
            if not is_hermitian(o):
                raise InvalidArgumentError(f"observable {j} is not Hermitian")
        if obs and any(o.shape != obs[0].shape for o in obs):
            raise DimensionError("observables have different dimensions")
        object.__setattr__(self, "observables", obs)
        object.__setattr__(self, "targets", targets)

    def __len__(self):
        return len(self.observables)

    def residuals(self, rho):
        return np.array([np.trace(rho @ o).real - t for o, t in zip(self.observables, self.targets)])


@dataclass(frozen=True)
class MaxEntSolution:
    state: np.ndarray
    multipliers: np.ndarray
    entropy: float
    residuals: np.ndarray
    iterations: int
    dual_history: tuple


def _gibbs(obs, lam, dim):
    h = np.einsum("j,jab->ab", lam, obs) if len(lam) else np.zeros((dim, dim), dtype=complex)
    w, v = eigh_hermitian(h)
    shift = w[0]
    boltz = np.exp(-(w - shift))
    z = boltz.sum()
    log_z = np.log(z) - shift
    rho = (v * (boltz / z)) @ dagger(v)
    return rho, log_z, w, v, boltz / z


def _kubo_mori_hessian(obs, w, v, p):
    """Hessian of the log-partition function: ``<<dO_i, dO_j>>`` Kubo-Mori covariance."""
    ob = np.einsum("ba,jbc,cd->jad", v.conj(), obs, v)  # observables in the eigenbasis
    dw = w[:, None] - w[None, :]
    dp = p[:, None] - p[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = np.where(np.abs(dw) > 1e-12, -dp / dw, 0.5 * (p[:, None] + p[None, :]))
    mean = np.einsum("jaa,a->j", ob, p).real
    hess = np.einsum("iab,ab,jba->ij", ob, kernel, ob).real - np.outer(mean, mean)
    return 0.5 * (hess + hess.T)


def maxent_state(constraints, dim, tol=DEFAULT_TOL, max_iter=MAX_ITERATIONS):
    """Maximum-entropy density operator subject to ``constraints``.

    Returns a MaxEntSolution with ``rho = exp(-sum_j l_j O_j) / Z``. Raises
    NoInteriorSolutionError when the multipliers diverge (``|l| > 1e6``) or
    the iteration cap is hit, which signals infeasible or boundary targets.
    A converged state with an eigenvalue below ``10 * tol`` is rejected for
    the same reason.
    """
    if constraints.observables and constraints.observables[0].shape != (dim, dim):
        raise DimensionError(f"observables are not {dim}x{dim}")
    obs = np.array(constraints.observables, dtype=complex).reshape(len(constraints), dim, dim)
    targets = np.array(constraints.targets, dtype=float)
    lam = np.zeros(len(constraints))

    def dual(l):
        return _gibbs(obs, l, dim)[1] + float(l @ targets)

    rho, log_z, w, v, p = _gibbs(obs, lam, dim)
    history = [log_z + float(lam @ targets)]
    iterations = 0
    while True:
        grad = targets - np.einsum("jab,ba->j", obs, rho).real
        if np.max(np.abs(grad), initial=0.0) <= tol:
            break
        if iterations >= max_iter:
            raise NoInteriorSolutionError(
                f"no convergence after {max_iter} iterations (residual {np.max(np.abs(grad)):.3g})"
            )
        hess = _kubo_mori_hessian(obs, w, v, p)
        # minimum-norm step handles linearly dependent observables
        step = -np.linalg.lstsq(hess + 1e-14 * np.eye(len(lam)), grad, rcond=1e-13)[0]
        t = 1.0
        f0 = history[-1]
        slope = float(grad @ step)
        resolvable = -slope > 1e-12 * max(1.0, abs(f0))
        while True:
            trial = lam + t * step
            f1 = dual(trial)
            # below float resolution of the dual the Armijo test is noise; the full step is safe there
            if not resolvable or f1 <= f0 + 1e-4 * t * slope or t < 1e-12:
                break
            t *= 0.5
        if resolvable and f1 > f0:
            # round-off floor: a strictly descending step no longer exists
            if np.max(np.abs(grad)) <= 1e3 * tol:
                break
            raise NoInteriorSolutionError("line search failed; targets are likely on the boundary")
        lam = trial
        iterations += 1
        if np.max(np.abs(lam)) > MULTIPLIER_LIMIT:
            raise NoInteriorSolutionError("Lagrange multipliers diverged; targets are not strictly feasible")
        rho, log_z, w, v, p = _gibbs(obs, lam, dim)
        history.append(f1)
    if p.min() <= 10.0 * tol:
        # residual is met only because the state is numerically singular
        raise NoInteriorSolutionError(
            f"solution has eigenvalue {p.min():.3g}; targets lie on (or within tolerance of) the boundary"
        )
    return MaxEntSolution(
        state=rho,
        multipliers=lam,
        entropy=von_neumann_entropy(rho),
        residuals=constraints.residuals(rho),
        iterations=iterations,
        dual_history=tuple(history),
    )


def maxent_qubit_z(e_z):
    """Closed form ``(1 + e_z Z) / 2``, valid on the boundary ``|e_z| = 1`` as well."""
    if not -1.0 <= e_z <= 1.0:
        raise InvalidArgumentError(f"|e_z| must be <= 1, got {e_z}")
    return density_from_bloch([0.0, 0.0, e_z])


def random_feasible_states(constraints, reference, count, rng, shrink_steps=60):
    """Random states satisfying ``constraints``, built around a feasible ``reference``.

    A random density operator is projected (Hilbert-Schmidt) onto the affine
    set of unit-trace matrices meeting the constraints; the difference from
    ``reference`` is then scaled by a random fraction of the largest factor
    that keeps the result positive semidefinite.
    """
    reference = as_density(reference)
    dim = reference.shape[0]
    basis = [np.eye(dim, dtype=complex)] + list(constraints.observables)
    vecs = np.array([b.reshape(-1) for b in basis])
    gram = (vecs.conj() @ vecs.T).real
    out = []
    for _ in range(count):
        delta = random_density(dim, rng) - reference
        coeffs = np.linalg.lstsq(gram, (vecs.conj() @ delta.reshape(-1)).real, rcond=None)[0]
        delta = delta - np.tensordot(coeffs, np.array(basis), axes=1)
        delta = 0.5 * (delta + dagger(delta))
        lo, hi = 0.0, 1.0
        if eigvalsh_hermitian(reference + delta)[0] < 0:
            for _ in range(shrink_steps):
                mid = 0.5 * (lo + hi)
                if eigvalsh_hermitian(reference + mid * delta)[0] >= 0:
                    lo = mid
                else:
                    hi = mid
        else:
            lo = 1.0
        out.append(reference + rng.random() * lo * delta)
    return out


def spin_constraints(axes, targets):
    """Constraint set ``<n.sigma> = e`` for each ``(n, e)`` pair."""
    obs = [np.einsum("k,kij->ij", np.asarray(n, dtype=float).astype(complex), PAULIS) for n in axes]
    return ConstraintSet(tuple(obs), tuple(targets))


def local_constraints(observable, target, n):
    """``<O>`` fixed to ``target`` on each of ``n`` systems (``O`` embedded as ``1 x .. O .. x 1``)."""
    observable = as_matrix(observable)
    d = observable.shape[0]
    obs = []
    for j in range(n):
        left = np.eye(d**j, dtype=complex)
        right = np.eye(d ** (n - j - 1), dtype=complex)
        obs.append(np.kron(np.kron(left, observable), right))
    return ConstraintSet(tuple(obs), (target,) * n)


@dataclass(frozen=True)
class ComparisonRecord:
    """Bayes posterior versus the MAXENT assignment built from its expectation values."""

    bayes_marginal: np.ndarray
    maxent_marginal: np.ndarray
    marginal_distance: float
    future_axis: np.ndarray
    n: int
    bayes_predictive: np.ndarray
    maxent_predictive: np.ndarray
    predictive_tv: float
    bayes_learning_shift: float
    maxent_learning_shift: float

    def to_dict(self):
        def clean(x):
            if isinstance(x, np.ndarray):
                if np.iscomplexobj(x):
                    return [[[float(c.real), float(c.imag)] for c in row] for row in x]
                return [float(v) for v in x]
            return x

        return {k: clean(v) for k, v in self.__dict__.items()}


def bayes_vs_maxent_report(posterior, axis_future, n, constraint_axes=((0.0, 0.0, 1.0),)):
    """Contrast a qubit posterior ensemble with the MAXENT state matching its data.

    The MAXENT assignment fixes the posterior mean of ``n.sigma`` for every
    axis in ``constraint_axes`` (by default only ``Z``, the measured
    observable). The record holds (i) the two single-system marginals and
    their trace distance, (ii) the predictive count distributions for ``n``
    future shots along ``axis_future`` (posterior mixture vs product-state
    binomial) and their total-variation distance, and (iii) how far one more
    ``+1`` result along the first constraint axis moves each scheme's
    marginal. The product assignment is a single-atom ensemble, so it cannot
    move.
    """
    if posterior.dim != 2:
        raise DimensionError("the comparison is defined for qubit ensembles")
    axis_future = np.asarray(axis_future, dtype=float)
    axes = [np.asarray(a, dtype=float) for a in constraint_axes]
    mean = posterior_moments(posterior).mean_bloch
    targets = [float(a @ mean) for a in axes]
    maxent = None
    if all(abs(t) < 1.0 - 1e-12 for t in targets):
        try:
            maxent = maxent_state(spin_constraints(axes, targets), 2).state
        except NoInteriorSolutionError:
            pass
    if maxent is None:
        # boundary targets admit a single (pure) feasible state
        maxent = density_from_bloch(np.linalg.lstsq(np.array(axes), np.array(targets), rcond=None)[0])
    bayes_marginal = marginal_state(posterior)
    p_plus = float(np.clip(0.5 * (1.0 + axis_future @ bloch_from_density(maxent)), 0.0, 1.0))

    bayes_pred = posterior_predictive_counts(posterior, axis_future, n)
    maxent_pred = binomial_predictive(p_plus, n)

    learn_axis = axes[0]
    moved = qubit_counts_update(posterior, learn_axis, 1, 0)
    product = Ensemble(maxent[None], np.zeros(1))
    product_moved = qubit_counts_update(product, learn_axis, 1, 0)
    return ComparisonRecord(
        bayes_marginal=bayes_marginal,
        maxent_marginal=maxent,
        marginal_distance=trace_distance(bayes_marginal, maxent),
        future_axis=axis_future,
        n=int(n),
        bayes_predictive=bayes_pred.probabilities,
        maxent_predictive=maxent_pred.probabilities,
        predictive_tv=total_variation(bayes_pred, maxent_pred),
        bayes_learning_shift=trace_distance(marginal_state(moved), bayes_marginal),
        maxent_learning_shift=trace_distance(marginal_state(product_moved), maxent),
    )
