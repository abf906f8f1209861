"""JSON and CSV encodings.

Complex numbers are ``[re, im]`` pairs, matrices row-major nested lists.
Floats are written in shortest round-trip form, and files are replaced
atomically (write to a temporary sibling, then rename).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .bounds import CSV_COLUMNS, SpeedReportRow
from .errors import IOFailure, ValidationError
from .geometry import SampledPath
from .propagate import HamiltonianPath
from .synthesis import SynthesisResult


def to_jsonable(obj):
    """Recursively convert numpy/complex data into JSON-ready Python values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, np.bool_):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return [to_jsonable(z.real), to_jsonable(z.imag)]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _complex_array(data, ndim: int, what: str) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
        raise ValidationError(f"{what}: expected nested [re, im] pairs of depth {ndim}")
    return arr[..., 0] + 1j * arr[..., 1]


def complex_vector_from_json(data) -> np.ndarray:
    return _complex_array(data, 1, "vector")


def path_to_json(path: SampledPath) -> dict:
    doc = {"times": to_jsonable(path.times), "states": to_jsonable(path.states)}
    if path.derivatives is not None:
        doc["derivatives"] = to_jsonable(path.derivatives)
    return doc


def path_from_json(doc) -> SampledPath:
    try:
        times = np.asarray(doc["times"], dtype=np.float64)
        states = _complex_array(doc["states"], 2, "states")
        ders = _complex_array(doc["derivatives"], 2, "derivatives") if "derivatives" in doc else None
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed state path document: {exc}") from exc
    return SampledPath(times, states, ders)


def hamiltonian_to_json(H: HamiltonianPath, times=None) -> dict:
    """Sampled paths as stored; analytic ones evaluated on ``times``."""
    if H.is_sampled:
        times, mats = H.times, H.matrices
    else:
        if times is None:
            raise ValidationError("analytic Hamiltonian needs a time grid to serialise")
        times = np.asarray(times, dtype=np.float64)
        mats = H.on_times(times)
    return {"dim": H.dim, "times": to_jsonable(times), "matrices": to_jsonable(mats)}


def hamiltonian_from_json(doc) -> HamiltonianPath:
    try:
        times = np.asarray(doc["times"], dtype=np.float64)
        mats = _complex_array(doc["matrices"], 3, "matrices")
        dim = int(doc.get("dim", mats.shape[1] if mats.ndim == 3 else 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed Hamiltonian document: {exc}") from exc
    if mats.ndim != 3 or mats.shape[1:] != (dim, dim):
        raise ValidationError(f"matrices do not match declared dim {dim}")
    return HamiltonianPath.sampled(times, mats)


def synthesis_to_json(result: SynthesisResult) -> dict:
    return {
        "times": to_jsonable(result.times),
        "g": to_jsonable(result.g),
        "h0": to_jsonable(result.h0.matrices),
        "e_plus": to_jsonable(result.e_plus),
        "e_minus": to_jsonable(result.e_minus),
        "sp_norm": to_jsonable(result.sp_norm),
        "hs_norm": to_jsonable(result.hs_norm),
        "speed": to_jsonable(result.speed),
        "m": to_jsonable(result.gauge.m),
        "dm": to_jsonable(result.gauge.dm),
        "gauge_factor": to_jsonable(result.gauge.gauge_factor),
    }


def report_to_json(report) -> dict:
    return {
        "name": report.name,
        "inputs": to_jsonable(report.inputs),
        "outputs": to_jsonable(report.outputs),
        "checks": {k: "pass" if v else "fail" for k, v in report.checks.items()},
        "passed": report.passed,
    }


def dumps(doc) -> str:
    return json.dumps(to_jsonable(doc), indent=2, allow_nan=False) + "\n"


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return repr(x) if math.isfinite(x) else ""
    return str(x)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if isinstance(row, dict):
            row = [row.get(col) for col in header]
        writer.writerow([_cell(x) for x in row])
    return buf.getvalue()


def speed_report_csv(rows: list[SpeedReportRow]) -> str:
    return csv_text(CSV_COLUMNS, [r.as_record() for r in rows])


def path_csv(path: SampledPath) -> str:
    header = ["t"]
    for i in range(path.dim):
        header += [f"re_{i}", f"im_{i}"]
    header.append("norm")
    norms = np.linalg.norm(path.states, axis=1)
    rows = []
    for t, s, nrm in zip(path.times, path.states, norms):
        row = [float(t)]
        for z in s:
            row += [float(z.real), float(z.imag)]
        row.append(float(nrm))
        rows.append(row)
    return csv_text(header, rows)


def series_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    return csv_text(list(rows[0].keys()), rows)


def write_text(path, text: str) -> None:
    """Atomically replace ``path`` with ``text``."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc
