"""Seeded batch experiments driven by a single JSON config.

A config looks like::

    {
      "kind": "qubit-counts",            # or tomography, verify-oracle, maxent-compare, predict
      "seed": 1234,
      "trial_count": 1,
      "prior": {"kind": "uniform-ball", "atom_count": 10000, "seed": 7},
      "true_state": {"bloch": [0.3, -0.2, 0.4]},
      "plan": [{"measurement": "z", "shots": 10000}],
      "output": {"path": "out.csv", "format": "csv"}
    }

See README.md for every key. Results are flat :class:`ResultRow` records
sorted by ``(trial, step)``; each carries the config hash and seed.
"""

import csv
import hashlib
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bayes import (
    binomial_predictive,
    counts_update,
    posterior_moments,
    posterior_predictive_counts,
    qubit_counts_update,
    total_variation,
)
from .core import as_density, density_from_bloch, trace_distance, von_neumann_entropy
from .ensemble import marginal_state
from .errors import ConfigError, QBayesError
from .maxent import bayes_vs_maxent_report
from .measurement import (
    as_povm,
    likelihood_matrix,
    operation_from_povm,
    projective_spin_povm,
    tetrahedral_sic_povm,
)
from .oracle import DEFAULT_CASES, DEFAULT_TOLERANCE, run_oracle
from .priors import PriorSpec, discretize_prior
from .rng import check_seed, make_rng
from .serialize import (
    bloch_list,
    dumps,
    matrix_from_json,
    matrix_to_json,
    operation_from_json,
    povm_from_json,
)

KINDS = ("qubit-counts", "tomography", "verify-oracle", "maxent-compare", "predict")
FORMATS = ("csv", "json")
CSV_HEADER = ["trial", "step", "quantity", "value", "config_hash", "seed"]
SEED_ENV = "QBAYES_SEED_OVERRIDE"

AXES = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}
XYZ_CYCLE = "xyz-cycle"


@dataclass(frozen=True)
class ResultRow:
    trial: int
    step: int
    quantity: str
    value: object
    config_hash: str
    seed: int

    def cells(self):
        return [self.trial, self.step, self.quantity, format_value(self.value), self.config_hash, self.seed]

    def to_dict(self):
        return dict(zip(CSV_HEADER, self.cells()))


def format_value(v):
    """Scalar values as shortest round-trip reprs, everything else as canonical JSON."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, str):
        return v
    return dumps(_jsonable(v))


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


# -- config -------------------------------------------------------------------


@dataclass(frozen=True)
class Measurement:
    ident: str
    povm: object
    axis: tuple = None  # set for spin measurements

    def __len__(self):
        return len(self.povm)


@dataclass(frozen=True)
class PlanEntry:
    measurement: str
    shots: int = None
    counts: tuple = None


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    seed: int
    raw: dict
    config_hash: str
    prior: PriorSpec = None
    plan: tuple = ()
    true_state: np.ndarray = None
    measurements: dict = None
    trial_count: int = 1
    checkpoints: tuple = None
    predict_axis: tuple = (1.0, 0.0, 0.0)
    predict_n: int = 10
    constraint_axes: tuple = ((0.0, 0.0, 1.0),)
    oracle_cases: int = DEFAULT_CASES
    oracle_tolerance: float = DEFAULT_TOLERANCE
    output_path: str = None
    output_format: str = "csv"


def config_hash(raw):
    """SHA-256 over the canonical JSON of everything except the output destination."""
    body = {k: v for k, v in raw.items() if k != "output"}
    return hashlib.sha256(dumps(body).encode()).hexdigest()


def _get(raw, key, types, field, default=None, required=False):
    if key not in raw:
        if required:
            raise ConfigError("missing required field", field)
        return default
    v = raw[key]
    types = types if isinstance(types, tuple) else (types,)
    if not isinstance(v, types) or (isinstance(v, bool) and bool not in types):
        raise ConfigError(f"expected {types}, got {type(v).__name__}", field)
    return v


def _parse_axis(v, field):
    if isinstance(v, str):
        if v not in AXES:
            raise ConfigError(f"unknown axis {v!r}; use x, y, z or a unit 3-vector", field)
        return AXES[v]
    try:
        a = tuple(float(x) for x in v)
    except (TypeError, ValueError):
        raise ConfigError("axis must be 'x', 'y', 'z' or a 3-vector", field) from None
    if len(a) != 3 or abs(math.sqrt(sum(x * x for x in a)) - 1.0) > 1e-12:
        raise ConfigError("axis must be a unit 3-vector", field)
    return a


def _parse_prior(raw, seed):
    if not isinstance(raw, dict):
        raise ConfigError("prior must be an object", "prior")
    kind = _get(raw, "kind", str, "prior.kind", required=True)
    try:
        return PriorSpec(
            kind=kind,
            atom_count=_get(raw, "atom_count", int, "prior.atom_count", default=1),
            seed=_get(raw, "seed", int, "prior.seed", default=seed),
            parameters={k: v for k, v in raw.items() if k in ("atoms", "grid", "density")}
            or _get(raw, "parameters", dict, "prior.parameters", default={}),
            symmetrize=_get(raw, "symmetrize", bool, "prior.symmetrize", default=False),
        )
    except QBayesError as exc:
        raise ConfigError(str(exc), "prior") from exc


def _parse_state(raw):
    try:
        if "bloch" in raw:
            return density_from_bloch(raw["bloch"])
        if "matrix" in raw:
            return as_density(matrix_from_json(raw["matrix"]))
    except (QBayesError, TypeError, KeyError) as exc:
        raise ConfigError(str(exc), "true_state") from exc
    raise ConfigError("true_state needs 'bloch' or 'matrix'", "true_state")


def _measurement(ident, custom):
    if ident in custom:
        return custom[ident]
    if ident in AXES:
        return Measurement(ident, projective_spin_povm(AXES[ident]), AXES[ident])
    if ident == "sic":
        return Measurement(ident, tetrahedral_sic_povm())
    raise KeyError(ident)


def _parse_measurements(raw):
    out = {}
    for ident, obj in (raw or {}).items():
        field = f"measurements.{ident}"
        if ident in AXES or ident in ("sic", XYZ_CYCLE):
            raise ConfigError("custom measurement id shadows a built-in", field)
        try:
            if "axis" in obj:
                axis = _parse_axis(obj["axis"], field + ".axis")
                out[ident] = Measurement(ident, projective_spin_povm(axis), axis)
            elif "kraus" in obj:
                out[ident] = Measurement(ident, as_povm(operation_from_json(obj, name=ident)))
            elif "effects" in obj:
                out[ident] = Measurement(ident, povm_from_json(obj, name=ident))
            else:
                raise ConfigError("need 'axis', 'kraus' or 'effects'", field)
        except QBayesError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc), field) from exc
    return out


def _parse_plan(raw, measurements):
    if not isinstance(raw, list):
        raise ConfigError("plan must be a list", "plan")
    plan = []
    for i, entry in enumerate(raw):
        field = f"plan[{i}]"
        if not isinstance(entry, dict):
            raise ConfigError("plan entries must be objects", field)
        m = entry.get("measurement")
        if isinstance(m, list):
            axis = _parse_axis(m, field + ".measurement")
            m = "axis:" + ",".join(repr(x) for x in axis)
            measurements[m] = Measurement(m, projective_spin_povm(axis), axis)
        if not isinstance(m, str):
            raise ConfigError("measurement must be a string id or a 3-vector", field + ".measurement")
        for ident in ("x", "y", "z") if m == XYZ_CYCLE else (m,):
            try:
                meas = _measurement(ident, measurements)
            except KeyError:
                raise ConfigError(f"unknown measurement id {ident!r}", field + ".measurement") from None
            measurements.setdefault(ident, meas)
        if "counts" in entry or "n_plus" in entry:
            if m == XYZ_CYCLE:
                raise ConfigError("explicit counts need a single measurement", field)
            if "counts" in entry:
                counts = entry["counts"]
            else:
                counts = [entry.get("n_plus", 0), entry.get("n_minus", 0)]
            if (
                not isinstance(counts, list)
                or len(counts) != len(measurements[m])
                or any(not isinstance(c, int) or isinstance(c, bool) or c < 0 for c in counts)
            ):
                raise ConfigError("counts must list one nonnegative integer per outcome", field)
            plan.append(PlanEntry(m, counts=tuple(counts)))
        else:
            shots = entry.get("shots")
            if not isinstance(shots, int) or isinstance(shots, bool) or shots < 0:
                raise ConfigError("shots must be a nonnegative integer", field + ".shots")
            plan.append(PlanEntry(m, shots=shots))
    return tuple(plan)


def parse_config(raw, seed_override=None, output_path=None, output_format=None):
    """Validate a config dict. ``seed_override`` beats the config's own seed."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    raw = json.loads(json.dumps(raw))
    kind = _get(raw, "kind", str, "kind", required=True)
    if kind not in KINDS:
        raise ConfigError(f"unknown kind {kind!r}; expected one of {KINDS}", "kind")
    if seed_override is not None:
        raw["seed"] = seed_override
    seed = _get(raw, "seed", int, "seed", default=0)
    try:
        check_seed(seed)
    except QBayesError as exc:
        raise ConfigError(str(exc), "seed") from exc
    trial_count = _get(raw, "trial_count", int, "trial_count", default=1)
    if trial_count < 1:
        raise ConfigError("trial_count must be >= 1", "trial_count")

    output = _get(raw, "output", dict, "output", default={})
    path = output_path or output.get("path")
    fmt = output_format or output.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}", "output.format")

    kw = dict(
        kind=kind,
        seed=seed,
        raw=raw,
        config_hash=config_hash(raw),
        trial_count=trial_count,
        output_path=path,
        output_format=fmt,
    )
    if kind == "verify-oracle":
        oracle = _get(raw, "oracle", dict, "oracle", default={})
        cases = _get(oracle, "cases", int, "oracle.cases", default=DEFAULT_CASES)
        tol = _get(oracle, "tolerance", (int, float), "oracle.tolerance", default=DEFAULT_TOLERANCE)
        if cases < 1:
            raise ConfigError("cases must be >= 1", "oracle.cases")
        if tol < 0:
            raise ConfigError("tolerance must be >= 0", "oracle.tolerance")
        return ExperimentConfig(oracle_cases=cases, oracle_tolerance=float(tol), **kw)

    measurements = _parse_measurements(_get(raw, "measurements", dict, "measurements", default={}))
    prior = _parse_prior(_get(raw, "prior", dict, "prior", required=True), seed)
    plan = _parse_plan(_get(raw, "plan", list, "plan", default=[]), measurements)
    true_state = None
    if "true_state" in raw:
        true_state = _parse_state(raw["true_state"])
    needs_truth = any(e.shots for e in plan)
    if needs_truth and true_state is None:
        raise ConfigError("simulated shots need a true_state", "true_state")
    if kind == "tomography" and true_state is None:
        raise ConfigError("tomography needs a true_state", "true_state")

    checkpoints = _get(raw, "checkpoints", list, "checkpoints")
    if checkpoints is not None:
        if any(not isinstance(c, int) or c < 1 for c in checkpoints) or sorted(set(checkpoints)) != checkpoints:
            raise ConfigError("checkpoints must be increasing positive integers", "checkpoints")
        checkpoints = tuple(checkpoints)

    predict = _get(raw, "predict", dict, "predict", default={})
    compare = _get(raw, "compare", dict, "compare", default={})
    section = compare if kind == "maxent-compare" else predict
    sname = "compare" if kind == "maxent-compare" else "predict"
    axis = _parse_axis(section.get("axis", "x"), f"{sname}.axis")
    n = _get(section, "n", int, f"{sname}.n", default=10)
    if n < 0:
        raise ConfigError("n must be >= 0", f"{sname}.n")
    caxes = tuple(_parse_axis(a, "compare.constraint_axes") for a in compare.get("constraint_axes", ["z"]))
    return ExperimentConfig(
        prior=prior,
        plan=plan,
        true_state=true_state,
        measurements=measurements,
        checkpoints=checkpoints,
        predict_axis=axis,
        predict_n=n,
        constraint_axes=caxes,
        **kw,
    )


def load_config(path, seed_override=None, output_path=None, output_format=None):
    """Read a JSON config file; ``QBAYES_SEED_OVERRIDE`` applies unless ``seed_override`` is given."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
    if seed_override is None:
        seed_override = env_seed_override()
    return parse_config(raw, seed_override, output_path, output_format)


def env_seed_override():
    v = os.environ.get(SEED_ENV)
    if v is None or v == "":
        return None
    try:
        return int(v)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {v!r}") from None


# -- running --------------------------------------------------------------------


def log_checkpoints(total):
    """``1, 3, 10, 30, 100, ...`` up to ``total``, always ending at ``total``."""
    out = []
    k = 0
    while True:
        c = (1 if k % 2 == 0 else 3) * 10 ** (k // 2)
        if c >= total:
            break
        out.append(c)
        k += 1
    if total > 0:
        out.append(total)
    return out


class _Trial:
    """Mutable per-trial state: posterior, cumulative shots and log evidence."""

    def __init__(self, cfg, prior, trial):
        self.cfg = cfg
        self.trial = trial
        self.posterior = prior
        self.step = 0
        self.log_evidence = 0.0
        self.rows = []
        self.rng = make_rng(cfg.seed, (trial, 1))
        self.truth_probs = {}

    def row(self, quantity, value, step=None):
        self.rows.append(
            ResultRow(self.trial, self.step if step is None else step, quantity, value, self.cfg.config_hash, self.cfg.seed)
        )

    def update(self, ident, counts):
        meas = self.cfg.measurements[ident]
        counts = np.asarray(counts)
        if meas.axis is not None and self.posterior.dim == 2:
            post, ev = qubit_counts_update(self.posterior, meas.axis, int(counts[0]), int(counts[1]), return_evidence=True)
        else:
            post, ev = counts_update(self.posterior, meas.povm, counts)
        self.posterior = post
        self.log_evidence += ev

    def probs(self, ident):
        if ident not in self.truth_probs:
            povm = self.cfg.measurements[ident].povm
            self.truth_probs[ident] = likelihood_matrix(self.cfg.true_state[None], povm)[0]
        return self.truth_probs[ident]

    def snapshot(self):
        post = self.posterior
        mean_state = marginal_state(post)
        if post.dim == 2:
            m = posterior_moments(post)
            self.row("mean_bloch", m.mean_bloch)
            self.row("bloch_variance", m.variances)
        else:
            self.row("mean_state", matrix_to_json(mean_state))
        self.row("entropy_mean_state", von_neumann_entropy(mean_state))
        self.row("log_evidence", self.log_evidence)
        self.row("effective_atoms", post.effective_size())
        if self.cfg.true_state is not None:
            self.row("trace_distance_truth", trace_distance(mean_state, self.cfg.true_state))


def _run_entry(t, entry, marks):
    if entry.counts is not None:
        t.update(entry.measurement, entry.counts)
        t.step += int(sum(entry.counts))
        t.snapshot()
        return
    cycle = ("x", "y", "z") if entry.measurement == XYZ_CYCLE else (entry.measurement,)
    start = t.step
    done = 0
    stops = [m - start for m in marks if start < m < start + entry.shots] + [entry.shots]
    for stop in stops:
        if stop <= done:
            continue
        for j, ident in enumerate(cycle):
            # shots with index i in [done, stop) and i % len(cycle) == j
            n = len(range(done + ((j - done) % len(cycle)), stop, len(cycle)))
            if n:
                counts = t.rng.multinomial(n, t.probs(ident))
                t.update(ident, counts)
        t.step = start + stop
        done = stop
        t.snapshot()


def _simulate(cfg, prior, trial):
    t = _Trial(cfg, prior, trial)
    t.snapshot()
    total = sum(e.shots if e.shots is not None else sum(e.counts) for e in cfg.plan)
    marks = list(cfg.checkpoints) if cfg.checkpoints is not None else log_checkpoints(total)
    for entry in cfg.plan:
        _run_entry(t, entry, marks)
    return t


def _predict_rows(t):
    cfg = t.cfg
    pred = posterior_predictive_counts(t.posterior, cfg.predict_axis, cfg.predict_n)
    mean_state = marginal_state(t.posterior)
    p_plus = 0.5 * (1.0 + float(np.dot(cfg.predict_axis, bloch_list(mean_state))))
    product = binomial_predictive(p_plus, cfg.predict_n)
    t.row("predictive", pred.probabilities)
    t.row("product_binomial", product.probabilities)
    t.row("predictive_tv_vs_product", total_variation(pred, product))


def _compare_rows(t):
    cfg = t.cfg
    rec = bayes_vs_maxent_report(t.posterior, cfg.predict_axis, cfg.predict_n, cfg.constraint_axes)
    t.row("bayes_marginal_bloch", bloch_list(rec.bayes_marginal))
    t.row("maxent_marginal_bloch", bloch_list(rec.maxent_marginal))
    t.row("marginal_distance", rec.marginal_distance)
    t.row("bayes_predictive", rec.bayes_predictive)
    t.row("maxent_predictive", rec.maxent_predictive)
    t.row("predictive_tv", rec.predictive_tv)
    t.row("bayes_learning_shift", rec.bayes_learning_shift)
    t.row("maxent_learning_shift", rec.maxent_learning_shift)
    return rec


def _oracle_rows(cfg):
    rows = []
    n_pass = 0
    for case, rep, triple in run_oracle(cfg.seed, cfg.oracle_cases, cfg.oracle_tolerance):
        spread = max(triple) - min(triple)
        ok = rep.passed and spread <= 1e-12
        n_pass += ok
        for q, v in (
            ("case", case.describe()),
            ("trace_distance", rep.trace_distance_posterior),
            ("max_marginal_distance", max(rep.marginal_distances)),
            ("p_k_bayes", rep.p_k_bayes),
            ("p_k_brute", rep.p_k_brute),
            ("p_k_triple", list(triple)),
            ("pass", bool(ok)),
        ):
            rows.append(ResultRow(0, case.index, q, v, cfg.config_hash, cfg.seed))
    summary = {"cases": cfg.oracle_cases, "passed": n_pass, "all_pass": n_pass == cfg.oracle_cases}
    return rows, summary


def run_experiment(cfg, threads=1):
    """Run ``cfg`` and return ``(rows, summary)``.

    Trials run on up to ``threads`` worker threads; rows are sorted by
    ``(trial, step)`` afterwards so the output never depends on scheduling.
    """
    if cfg.kind == "verify-oracle":
        rows, flags = _oracle_rows(cfg)
        return rows, _summary(cfg, rows, flags)

    prior = discretize_prior(cfg.prior)

    def one(trial):
        t = _simulate(cfg, prior, trial)
        extra = None
        if cfg.kind == "predict":
            _predict_rows(t)
        elif cfg.kind == "maxent-compare":
            extra = _compare_rows(t)
        return t.rows, extra

    trials = range(cfg.trial_count)
    if threads > 1 and cfg.trial_count > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, trials))
    else:
        results = [one(i) for i in trials]
    rows = []
    for trial_rows, _ in results:
        rows.extend(trial_rows)
    # stable sort keeps the per-step emission order of quantities
    rows.sort(key=lambda r: (r.trial, r.step))

    flags = {}
    if cfg.kind in ("tomography", "qubit-counts") and cfg.true_state is not None:
        flags["mean_trace_distance"] = _mean_by_step(rows, "trace_distance_truth")
    if cfg.kind == "maxent-compare":
        rec = results[0][1]
        flags["maxent_cannot_learn"] = rec.maxent_learning_shift <= 1e-12
        flags["bayes_learns"] = rec.bayes_learning_shift > 0.0
    return rows, _summary(cfg, rows, flags)


def _mean_by_step(rows, quantity):
    acc = {}
    for r in rows:
        if r.quantity == quantity:
            acc.setdefault(r.step, []).append(float(r.value))
    return [[k, float(np.mean(v))] for k, v in sorted(acc.items())]


def _summary(cfg, rows, flags):
    return {
        "config_hash": cfg.config_hash,
        "seed": cfg.seed,
        "kind": cfg.kind,
        "trial_count": cfg.trial_count,
        "row_count": len(rows),
        "flags": _jsonable(flags),
    }


def tomography_trial(cfg, trial=0, prior=None):
    """Rows of a single tomography trial (see :func:`run_experiment` for whole runs)."""
    if cfg.kind != "tomography":
        raise ConfigError("tomography_trial needs a tomography config", "kind")
    prior = discretize_prior(cfg.prior) if prior is None else prior
    return _simulate(cfg, prior, trial).rows


# -- output ---------------------------------------------------------------------


def render_results(rows, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow(r.cells())
        return buf.getvalue()
    if fmt == "json":
        return "".join(dumps(r.to_dict()) + "\n" for r in rows)
    raise ConfigError(f"format must be one of {FORMATS}", "output.format")


def emit_results(rows, fmt, path):
    """Write rows as CSV (header row, RFC 4180 quoting) or JSON lines."""
    text = render_results(rows, fmt)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def read_results(path, fmt):
    """Parse emitted output back into dicts of strings keyed by column name."""
    with open(path, newline="") as fh:
        if fmt == "csv":
            return list(csv.DictReader(fh))
        out = []
        for line in fh:
            d = json.loads(line)
            out.append({k: str(v) for k, v in d.items()})
        return out


def write_summary(summary, path):
    with open(path, "w") as fh:
        fh.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")


#: Built-in configs used by the CLI subcommands when no ``--config`` is given.
DEFAULT_CONFIGS = {
    "verify-oracle": {
        "kind": "verify-oracle",
        "seed": 0,
        "oracle": {"cases": DEFAULT_CASES, "tolerance": DEFAULT_TOLERANCE},
    },
    "tomography": {
        "kind": "tomography",
        "seed": 1,
        "trial_count": 100,
        "prior": {"kind": "uniform-ball", "atom_count": 10000, "seed": 1},
        "true_state": {"bloch": [0.3, -0.2, 0.4]},
        "plan": [{"measurement": "sic", "shots": 30000}],
    },
    "maxent-compare": {
        "kind": "maxent-compare",
        "seed": 1,
        "prior": {"kind": "uniform-ball", "atom_count": 10000, "seed": 1, "symmetrize": True},
        "plan": [{"measurement": "z", "n_plus": 5000, "n_minus": 5000}],
        "compare": {"axis": "x", "n": 10, "constraint_axes": ["z"]},
    },
    "predict": {
        "kind": "predict",
        "seed": 1,
        "prior": {
            "kind": "atoms",
            "atoms": [
                {"weight": 0.25, "bloch": [0.0, 0.6, 0.0]},
                {"weight": 0.25, "bloch": [0.0, 0.0, -0.7]},
                {"weight": 0.5, "bloch": [0.0, -0.3, 0.5]},
            ],
        },
        "plan": [{"measurement": "z", "n_plus": 3, "n_minus": 1}],
        "predict": {"axis": "x", "n": 10},
    },
    "qubit-counts": {
        "kind": "qubit-counts",
        "seed": 1,
        "prior": {"kind": "uniform-ball", "atom_count": 10000, "seed": 1, "symmetrize": True},
        "plan": [{"measurement": "z", "n_plus": 7500, "n_minus": 2500}],
    },
}
