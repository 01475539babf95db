"""Prior measures on qubit state space and their discretisation into ensembles.

All samplers draw a radius by inverse-transform sampling and an independent
uniform direction, so each one can be checked against one-dimensional
quadrature of its radial law.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .core import density_from_bloch
from .ensemble import Ensemble
from .errors import InvalidPriorError
from .rng import check_seed, make_rng

_SIGN_PATTERNS = np.array(
    [[sx, sy, sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)], dtype=float
)

PRIOR_KINDS = ("uniform-ball", "pure-haar", "bures", "isotropic-radial", "atoms")


def _directions(rng, count):
    v = rng.standard_normal((count, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _bloch_points(radii, rng):
    return radii[:, None] * _directions(rng, radii.shape[0])


def sample_bloch_uniform(count, seed, stream=0):
    """``count`` points uniform in the closed unit ball, shape ``(count, 3)``."""
    rng = make_rng(seed, stream)
    radii = np.cbrt(rng.random(count))
    return _bloch_points(radii, rng)


def sample_pure_haar(count, seed, stream=0):
    """Bloch vectors of Haar-random pure qubit states (uniform on the unit sphere)."""
    rng = make_rng(seed, stream)
    return _directions(rng, count)


def bures_radius_quantile(u, iters=64):
    """Inverse CDF of the qubit Bures radial law, density ``(4/pi) r^2 / sqrt(1 - r^2)``.

    With ``r = sin(t)`` the CDF is ``(2t - sin 2t) / pi``, so we solve
    ``phi - sin(phi) = pi u`` for ``phi = 2t`` by bisection on ``[0, pi]``.
    """
    u = np.asarray(u, dtype=float)
    target = np.pi * u
    lo = np.zeros_like(u)
    hi = np.full_like(u, np.pi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        below = mid - np.sin(mid) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    phi = 0.5 * (lo + hi)
    return np.sin(0.5 * phi)


def sample_bures(count, seed, stream=0):
    """Bloch vectors distributed according to the Bures measure on qubit states."""
    rng = make_rng(seed, stream)
    radii = bures_radius_quantile(rng.random(count))
    return _bloch_points(radii, rng)


def radial_cdf(grid, density):
    """Normalised CDF of the Bloch radius for an isotropic density ``p(|b|)``.

    ``density`` holds ``p`` (per unit volume) at the radii in ``grid``; the
    radius itself is distributed as ``r^2 p(r)``.
    """
    grid = np.asarray(grid, dtype=float)
    density = np.asarray(density, dtype=float)
    if grid.ndim != 1 or grid.shape != density.shape or grid.size < 2:
        raise InvalidPriorError("radial grid and density must be equal-length vectors (>= 2 points)")
    if np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > 1:
        raise InvalidPriorError("radial grid must increase strictly within [0, 1]")
    if not np.all(np.isfinite(density)) or np.any(density < 0):
        raise InvalidPriorError("radial density must be finite and nonnegative")
    cdf = cumulative_trapezoid(grid**2 * density, grid, initial=0.0)
    if not cdf[-1] > 0:
        raise InvalidPriorError("radial density is not normalizable (zero mass)")
    return cdf / cdf[-1]


def sample_isotropic_radial(count, seed, grid, density, stream=0):
    rng = make_rng(seed, stream)
    cdf = radial_cdf(grid, density)
    u = rng.random(count)
    # keep only the endpoints of increasing CDF segments so no radius falls in a zero-mass gap
    rising = np.diff(cdf) > 0
    keep = np.concatenate([rising, [False]]) | np.concatenate([[False], rising])
    radii = np.interp(u, cdf[keep], np.asarray(grid, dtype=float)[keep])
    return _bloch_points(radii, rng)


@dataclass(frozen=True)
class PriorSpec:
    """Description of a prior measure and how to discretise it.

    ``parameters`` depends on ``kind``: ``{"grid": [...], "density": [...]}``
    for ``isotropic-radial``; ``{"atoms": [{"weight": w, "bloch": [x, y, z]}
    | {"weight": w, "matrix": m}, ...]}`` for ``atoms``. With ``symmetrize``
    each sampled point is reflected through the three coordinate planes (all
    eight sign patterns, so ``atom_count`` must be a multiple of 8). The
    ensemble then has an exactly zero mean Bloch vector, and stays symmetric
    in the unmeasured components under axis-aligned spin data.
    """

    kind: str
    atom_count: int = 1
    seed: int = 0
    parameters: dict = field(default_factory=dict)
    symmetrize: bool = False

    def __post_init__(self):
        if self.kind not in PRIOR_KINDS:
            raise InvalidPriorError(f"unknown prior kind {self.kind!r}; expected one of {PRIOR_KINDS}")
        if self.kind != "atoms" and (not isinstance(self.atom_count, (int, np.integer)) or self.atom_count < 1):
            raise InvalidPriorError("atom_count must be a positive integer")
        if self.symmetrize and self.kind != "atoms" and self.atom_count % 8:
            raise InvalidPriorError("symmetrize needs atom_count divisible by 8")
        check_seed(self.seed)


def _atoms_ensemble(parameters):
    from .serialize import matrix_from_json

    atoms = parameters.get("atoms")
    if not atoms:
        raise InvalidPriorError("atoms prior needs a non-empty 'atoms' list")
    weights, states = [], []
    for a in atoms:
        weights.append(float(a["weight"]))
        if "bloch" in a:
            states.append(density_from_bloch(a["bloch"]))
        elif "matrix" in a:
            states.append(matrix_from_json(a["matrix"]))
        else:
            raise InvalidPriorError("each atom needs 'bloch' or 'matrix'")
    total = sum(weights)
    if any(w < 0 for w in weights) or not total > 0:
        raise InvalidPriorError("atom weights must be nonnegative with positive sum")
    if abs(total - 1.0) > 1e-12:
        raise InvalidPriorError(f"atom weights sum to {total!r}, expected 1")
    return Ensemble.from_atoms(np.array(weights), states)


def discretize_prior(spec):
    """Equal-weight sampled ensemble for a PriorSpec (explicit weights for ``atoms``)."""
    if spec.kind == "atoms":
        return _atoms_ensemble(spec.parameters)
    count = spec.atom_count // 8 if spec.symmetrize else spec.atom_count
    if spec.kind == "uniform-ball":
        pts = sample_bloch_uniform(count, spec.seed)
    elif spec.kind == "pure-haar":
        pts = sample_pure_haar(count, spec.seed)
    elif spec.kind == "bures":
        pts = sample_bures(count, spec.seed)
    else:
        p = spec.parameters
        if "grid" not in p or "density" not in p:
            raise InvalidPriorError("isotropic-radial prior needs 'grid' and 'density'")
        pts = sample_isotropic_radial(count, spec.seed, p["grid"], p["density"])
    if spec.symmetrize:
        pts = np.concatenate([pts * s for s in _SIGN_PATTERNS])
    return Ensemble.from_bloch(pts)
