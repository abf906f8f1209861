import json
import os

import numpy as np
import pytest

from effham.bounds import CSV_COLUMNS, bound_report
from effham.errors import IOFailure, ValidationError
from effham.geometry import SampledPath
from effham.propagate import HamiltonianPath
from effham.serialize import (
    csv_text,
    dumps,
    hamiltonian_from_json,
    hamiltonian_to_json,
    path_csv,
    path_from_json,
    path_to_json,
    read_json,
    speed_report_csv,
    to_jsonable,
    write_text,
)

SY = np.array([[0, -1j], [1j, 0]])


def test_to_jsonable_types():
    doc = to_jsonable({"a": np.float64(0.1), "b": 1 + 2j, "c": np.array([1, 2]), "d": np.bool_(True), "e": None,
                       "f": float("nan")})
    assert doc == {"a": 0.1, "b": [1.0, 2.0], "c": [1, 2], "d": True, "e": None, "f": None}
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_path_round_trip():
    t = np.linspace(0, 1, 4)
    states = np.array([[0.1 + 0.2j, 1 / 3], [1, 0], [0, 1j], [np.pi, -np.e * 1j]])
    p = SampledPath(t, states, states * 2)
    back = path_from_json(json.loads(dumps(path_to_json(p))))
    assert np.array_equal(back.times, t) and np.array_equal(back.states, states)
    assert np.array_equal(back.derivatives, states * 2)
    with pytest.raises(ValidationError):
        path_from_json({"times": [0, 1]})
    with pytest.raises(ValidationError):
        path_from_json({"times": [0, 1], "states": [[1, 0], [0, 1]]})


def test_hamiltonian_round_trip():
    t = np.linspace(0, 1, 3)
    H = HamiltonianPath.sampled(t, np.stack([SY * k for k in (1, 2, 3)]))
    doc = json.loads(dumps(hamiltonian_to_json(H)))
    assert doc["dim"] == 2 and doc["matrices"][0][0][1] == [0.0, -1.0]
    back = hamiltonian_from_json(doc)
    assert np.array_equal(back.matrices, H.matrices)
    analytic = HamiltonianPath.constant(SY)
    with pytest.raises(ValidationError):
        hamiltonian_to_json(analytic)
    assert hamiltonian_to_json(analytic, times=[0, 1])["matrices"][1][1][0] == [0.0, 1.0]
    doc["dim"] = 3
    with pytest.raises(ValidationError):
        hamiltonian_from_json(doc)


def test_floats_use_shortest_round_trip():
    text = dumps({"x": 0.1, "y": 1 / 3})
    assert '"x": 0.1' in text and repr(1 / 3) in text
    assert "NaN" not in dumps({"z": float("nan")})


def test_csv_outputs():
    text = speed_report_csv([bound_report(SY, [1, 0], 0.0), bound_report(np.eye(3), [1, 0, 0], 0.5)])
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1] == "0.0,1.0,1.0,1.0,1.4142135623730951,1.0,1.0,0.0,0.0,1.0,2.0"
    assert lines[2].endswith(",,,,")  # eta undefined, no Bloch or Fleming data for N = 3
    p = SampledPath([0.0, 0.5], [[1, 0], [0, 1j]])
    assert path_csv(p).splitlines() == ["t,re_0,im_0,re_1,im_1,norm", "0.0,1.0,0.0,0.0,0.0,1.0",
                                        "0.5,0.0,0.0,0.0,1.0,1.0"]
    assert csv_text(["a", "b"], [{"a": 1, "b": None}]) == "a,b\n1,\n"


def test_write_text_atomic(tmp_path):
    target = tmp_path / "sub" / "out.txt"
    write_text(target, "first")
    write_text(target, "second")
    assert target.read_text() == "second"
    assert os.listdir(target.parent) == ["out.txt"]
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(IOFailure):
        write_text(blocker / "child.txt", "nope")


def test_read_json_errors(tmp_path):
    with pytest.raises(IOFailure):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValidationError):
        read_json(bad)
