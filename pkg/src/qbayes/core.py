"""Dense linear algebra for finite-dimensional quantum states.

States and operators are plain complex ``numpy`` arrays. A density operator is
any square array that is Hermitian, has unit trace and is positive
semidefinite; :func:`as_density` checks those properties. Every spectral
quantity (entropy, trace distance, PSD check, matrix functions) goes through
:func:`eigh_hermitian`.
"""

from functools import reduce

import numpy as np

from .errors import CapacityError, DimensionError, InvalidStateError

#: Largest Hilbert-space dimension any tensor construction may produce.
MAX_DIM = 2**12

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
BLOCH_TOL = 1e-12

IDENTITY2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])

for _m in (IDENTITY2, PAULI_X, PAULI_Y, PAULI_Z, PAULIS):
    _m.flags.writeable = False


def as_matrix(m):
    """Return ``m`` as a square, finite complex array (a copy is not forced)."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidStateError("matrix has non-finite entries")
    return a


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def hermitian_part(m):
    return 0.5 * (m + dagger(m))


def eigh_hermitian(m):
    """Eigen-decomposition of a Hermitian matrix (or a stack of them).

    The input is symmetrised first so that round-off asymmetry never leaks
    into the spectrum.
    """
    return np.linalg.eigh(hermitian_part(np.asarray(m, dtype=complex)))


def eigvalsh_hermitian(m):
    return np.linalg.eigvalsh(hermitian_part(np.asarray(m, dtype=complex)))


def apply_hermitian_function(m, func):
    """Return ``f(M)`` for Hermitian ``M`` via its eigen-decomposition."""
    w, v = eigh_hermitian(m)
    return (v * func(w)) @ dagger(v)


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol)


def as_density(m, *, tol_trace=TRACE_TOL, tol_psd=PSD_TOL):
    """Validate ``m`` as a density operator and return it as a complex array.

    Raises InvalidStateError if ``m`` is not Hermitian, not unit trace or has
    an eigenvalue below ``-tol_psd``.
    """
    a = as_matrix(m)
    if not is_hermitian(a):
        raise InvalidStateError("density operator is not Hermitian")
    tr = np.trace(a)
    if abs(tr - 1.0) > tol_trace:
        raise InvalidStateError(f"density operator has trace {tr.real:.15g}, expected 1")
    lam_min = eigvalsh_hermitian(a)[0]
    if lam_min < -tol_psd:
        raise InvalidStateError(f"density operator has negative eigenvalue {lam_min:.3g}")
    return a


def is_density(m):
    try:
        as_density(m)
    except (InvalidStateError, DimensionError):
        return False
    return True


def check_dim(dim, cap=None):
    cap = MAX_DIM if cap is None else cap
    if dim > cap:
        raise CapacityError(f"dimension {dim} exceeds capacity {cap}")


# -- qubits -------------------------------------------------------------------


def density_from_bloch(b):
    """Qubit state ``(1 + x X + y Y + z Z) / 2``.

    Accepts a single 3-vector or an array of shape ``(..., 3)``; returns
    matching ``(..., 2, 2)`` arrays. Vectors with norm in ``(1, 1 + 1e-12]``
    are rescaled onto the sphere.
    """
    b = np.asarray(b, dtype=float)
    if b.shape[-1:] != (3,):
        raise DimensionError(f"Bloch vector must have 3 components, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise InvalidStateError("Bloch vector has non-finite components")
    norm = np.linalg.norm(b, axis=-1, keepdims=True)
    if np.any(norm > 1.0 + BLOCH_TOL):
        raise InvalidStateError(f"Bloch vector norm {float(np.max(norm)):.15g} exceeds 1")
    b = np.where(norm > 1.0, b / np.where(norm > 0, norm, 1.0), b)
    return 0.5 * (IDENTITY2 + np.einsum("...k,kij->...ij", b.astype(complex), PAULIS))


def bloch_from_density(r):
    """Inverse of :func:`density_from_bloch`; works on stacks of 2x2 matrices."""
    r = np.asarray(r, dtype=complex)
    if r.shape[-2:] != (2, 2):
        raise DimensionError(f"Bloch representation needs dim 2, got shape {r.shape}")
    return np.einsum("kij,...ji->...k", PAULIS, r).real


def spin_projector(axis, sign):
    """Projector ``(1 + sign * n.sigma) / 2`` onto the +/- eigenspace of ``n.sigma``."""
    n = np.asarray(axis, dtype=float)
    return 0.5 * (IDENTITY2 + sign * np.einsum("k,kij->ij", n.astype(complex), PAULIS))


# -- composition ----------------------------------------------------------------


def tensor_product(a, b, *, cap=None):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    check_dim(a.shape[-1] * b.shape[-1], cap)
    return np.kron(a, b)


def tensor_power(r, n, *, cap=None):
    """``r`` tensored with itself ``n`` times (``n >= 1``)."""
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    r = np.asarray(r, dtype=complex)
    check_dim(r.shape[-1] ** n, cap)
    return reduce(np.kron, [r] * n)


def tensor_all(ops, *, cap=None):
    ops = [np.asarray(o, dtype=complex) for o in ops]
    check_dim(int(np.prod([o.shape[-1] for o in ops])), cap)
    return reduce(np.kron, ops)


def partial_trace(r, dims, keep):
    """Reduce ``r`` on subsystems of sizes ``dims`` to the subsystems in ``keep``.

    ``keep`` is an iterable of subsystem indices; the result orders the kept
    subsystems as they appear in ``dims``.
    """
    r = np.asarray(r, dtype=complex)
    dims = [int(d) for d in dims]
    n = len(dims)
    total = int(np.prod(dims)) if dims else 0
    if r.ndim != 2 or r.shape != (total, total):
        raise DimensionError(f"subsystem dims {dims} do not match matrix shape {r.shape}")
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"keep must be a non-empty subset of range({n}), got {keep}")
    traced = [i for i in range(n) if i not in keep]
    t = r.reshape(dims + dims)
    # trace out from the highest index so earlier axis positions stay valid
    for count, i in enumerate(reversed(traced)):
        m = n - count
        t = np.trace(t, axis1=i, axis2=i + m)
    dk = int(np.prod([dims[i] for i in keep]))
    return t.reshape(dk, dk)


# -- functionals ----------------------------------------------------------------


def von_neumann_entropy(r):
    """Entropy ``-tr(r ln r)`` in nats; eigenvalues within -1e-10 of zero count as zero."""
    lam = eigvalsh_hermitian(r)
    lam = np.clip(lam, 0.0, None)
    nz = lam[lam > 0]
    return float(-np.sum(nz * np.log(nz)))


def trace_distance(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"trace distance of shapes {a.shape} and {b.shape}")
    return float(0.5 * np.sum(np.abs(eigvalsh_hermitian(a - b))))


# -- random objects ---------------------------------------------------------------


def random_unitary(dim, rng):
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(dim, rng, rank=None):
    """Random density operator ``G G^dag / tr`` with ``G`` a ``dim x rank`` Ginibre matrix."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ dagger(g)
    rho = hermitian_part(rho)
    return rho / np.trace(rho).real
