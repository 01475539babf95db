"""JSON and CSV wire formats.

Matrix: ``{"dim": d, "data": [[re, im], ...]}`` with ``d*d`` entries in
row-major order. POVM: ``{"effects": [matrix, ...], "labels": [...]}``.
Operation: ``{"kraus": [[matrix, ...], ...]}`` (one list per outcome).
Ensemble: ``{"dim": d, "atoms": [{"weight": w, "bloch": [x, y, z]}, ...]}``
for qubits, ``{"weight": w, "matrix": matrix}`` otherwise. A measurement
record is a JSON list of ``[operation_id, outcome]`` pairs or a CSV file
with columns ``step,operation_id,outcome``.
"""

import csv
import io
import json

import numpy as np

from .core import as_matrix, bloch_from_density
from .ensemble import Ensemble, MeasurementRecord
from .errors import ConfigError, DimensionError
from .measurement import Povm, QuantumOperation


def matrix_to_json(m):
    m = as_matrix(m)
    return {
        "dim": int(m.shape[0]),
        "data": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def matrix_from_json(obj):
    """Parse the matrix format; a plain nested list of real numbers is accepted too."""
    if isinstance(obj, dict):
        dim = int(obj["dim"])
        data = obj["data"]
        if len(data) != dim * dim:
            raise DimensionError(f"matrix data has {len(data)} entries, expected {dim * dim}")
        flat = np.array([complex(re, im) for re, im in data])
        return flat.reshape(dim, dim)
    return as_matrix(np.array(obj, dtype=complex))


def povm_to_json(p):
    out = {"effects": [matrix_to_json(e) for e in p.effects]}
    if p.labels is not None:
        out["labels"] = list(p.labels)
    return out


def povm_from_json(obj, name=None):
    return Povm([matrix_from_json(e) for e in obj["effects"]], labels=obj.get("labels"), name=name)


def operation_to_json(op):
    out = {"kraus": [[matrix_to_json(a) for a in ops] for ops in op.kraus]}
    if op.labels is not None:
        out["labels"] = list(op.labels)
    return out


def operation_from_json(obj, name=None):
    kraus = tuple([matrix_from_json(a) for a in ops] for ops in obj["kraus"])
    return QuantumOperation(kraus, labels=obj.get("labels"), name=name)


def ensemble_to_json(e):
    atoms = []
    w = e.weights
    if e.dim == 2:
        for wi, b in zip(w, e.bloch):
            atoms.append({"weight": float(wi), "bloch": [float(x) for x in b]})
    else:
        for wi, s in zip(w, e.states):
            atoms.append({"weight": float(wi), "matrix": matrix_to_json(s)})
    return {"dim": int(e.dim), "atoms": atoms}


def ensemble_from_json(obj):
    atoms = obj["atoms"]
    w = np.array([float(a["weight"]) for a in atoms])
    if all("bloch" in a for a in atoms):
        return Ensemble.from_bloch(np.array([a["bloch"] for a in atoms], dtype=float), w / w.sum())
    return Ensemble.from_atoms(w / w.sum(), [matrix_from_json(a["matrix"]) for a in atoms])


def record_to_json(record):
    return [[op, k] for op, k in record.entries]


def record_from_json(obj):
    return MeasurementRecord(tuple((op, k) for op, k in obj))


def record_to_csv(record):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["step", "operation_id", "outcome"])
    for step, (op, k) in enumerate(record.entries):
        writer.writerow([step, op, k])
    return buf.getvalue()


def record_from_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ["step", "operation_id", "outcome"]:
        raise ConfigError(f"unexpected record columns {reader.fieldnames}")
    entries = []
    for row in reader:
        op = row["operation_id"]
        entries.append((int(op) if op.lstrip("-").isdigit() else op, int(row["outcome"])))
    return MeasurementRecord(tuple(entries))


def dumps(obj):
    """Canonical JSON (sorted keys, compact separators) used for hashing and output."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def bloch_list(state):
    return [float(x) for x in bloch_from_density(state)]
