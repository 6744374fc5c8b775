# Copyright (C) 2024 graph-state-tools developers
#
# This file is part of graph-state-tools.
#
# GRAPH-STATE-TOOLS is free software; you can redistribute it and/or modify it under the
# terms of the GNU General Public License as published by the Free Software
# Foundation; either version 3 of the License, or (at your option) any later
# version.
#
# GRAPH-STATE-TOOLS is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License
# along with graph-state-tools; if not, write to the Free Software
# Foundation, Inc., 51 Franklin St, Fifth Floor, Boston, MA  02110-1301  USA
"""
Module provides command-line test functions.
"""

import json
from pathlib import Path

import pytest

from graph_state_tools.cli import main
from graph_state_tools.circuits import parse_circuit_text
from graph_state_tools.graphs import Arc, GraphSpec, serialize_graph
from graph_state_tools.statevector import InitParams
from graph_state_tools.utils import triangle_graph_url


@pytest.fixture(name="triangle_file")
def fixture_triangle_file() -> str:
    """
    Path to the packaged triangle document.

    Returns
    -------
    str
        The path.
    """
    return str(triangle_graph_url)


@pytest.fixture(name="pair_file")
def fixture_pair_file(tmp_path: Path) -> str:
    """
    Graph with two U vertices sharing a V neighbor, plus one W vertex.

    Parameters
    ----------
    tmp_path : Path
        Temporary directory.

    Returns
    -------
    str
        Path to the document.
    """
    g = GraphSpec(
        ("u1", "u2"),
        ("v",),
        ("w",),
        (Arc("u1", "v", 0.6), Arc("u2", "v", 0.6), Arc("u1", "w", 0.3)),
    )
    path = tmp_path / "pair.json"
    path.write_text(serialize_graph(g, InitParams.uniform(g, 1.1, 0.4)), encoding="utf-8")
    return str(path)


def test_structure(pair_file, capsys):
    """
    Test the structure report.

    Parameters
    ----------
    pair_file : str
        Graph document.
    capsys : pytest.CaptureFixture
        Captured output.
    """
    assert main(["structure", pair_file]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n_qubits"] == 4
    assert report["index_map"] == {"u1": 0, "u2": 1, "v": 2, "w": 3}
    assert report["degrees"]["u1"] == {"V": 1, "W": 1}
    (pair,) = report["pairs"]
    assert (pair["x1"], pair["x2"], pair["set"]) == ("u1", "u2", "U")
    assert pair["stats"]["V"]["common"] == 1
    assert pair["stats"]["W"]["exclusive_first"] == 1


def test_edist_analytic(triangle_file, capsys):
    """
    Test analytic entanglement distances of the triangle.

    Parameters
    ----------
    triangle_file : str
        Graph document.
    capsys : pytest.CaptureFixture
        Captured output.
    """
    assert main(["edist", triangle_file]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["mode"] == "analytic"
    assert report["vertices"]["0"]["analytic"] == pytest.approx(0.0, abs=1e-12)
    assert report["vertices"]["2"]["analytic"] == pytest.approx(0.5, abs=1e-12)


def test_edist_compare(triangle_file, tmp_path):
    """
    Test compare mode of one vertex written to a file.

    Parameters
    ----------
    triangle_file : str
        Graph document.
    tmp_path : Path
        Temporary directory.
    """
    out = tmp_path / "edist.json"
    argv = ["edist", triangle_file, "--vertex", "2", "--mode", "compare", "--shots", "4000", "--seed", "9"]
    assert main(argv + ["--n_jobs", "1", "--out", str(out)]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    values = report["vertices"]["2"]
    assert list(report["vertices"]) == ["2"]
    assert values["abs_diff_simulated"] <= 1e-10
    assert values["abs_diff_sampled"] <= 5 * values["stderr"] + 5e-3
    assert report["noise"]["seed"] == 9
    assert report["noise"]["shots"] == 4000


def test_sweep_csv(triangle_file, tmp_path):
    """
    Test a sweep file run written as CSV.

    Parameters
    ----------
    triangle_file : str
        Graph document.
    tmp_path : Path
        Temporary directory.
    """
    spec = tmp_path / "sweep.toml"
    spec.write_text(
        "[Sweep]\ntheta = {start = 0.0, stop = 3.141592653589793, steps = 3}\n"
        "phi = {start = 0.0, stop = 1.0, steps = 2}\n",
        encoding="utf-8",
    )
    out = tmp_path / "sweep.csv"
    assert main(["sweep", triangle_file, str(spec), "--mode", "simulated", "--n_jobs", "1", "--out", str(out)]) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "theta,phi,vertex,analytic,estimate,stderr,abs_diff"
    assert len(lines) == 1 + 3 * 2 * 3
    first = out.read_bytes()
    assert main(["sweep", triangle_file, str(spec), "--mode", "simulated", "--n_jobs", "1", "--out", str(out)]) == 0
    assert out.read_bytes() == first


def test_correlators(pair_file, capsys):
    """
    Test covered, uncovered and cross-set correlators.

    Parameters
    ----------
    pair_file : str
        Graph document.
    capsys : pytest.CaptureFixture
        Captured output.
    """
    assert main(["correlators", pair_file, "u1", "u2", "--axes", "zz", "xy"]) == 0
    report = json.loads(capsys.readouterr().out)
    covered, uncovered = report["correlators"]
    assert covered["abs_diff"] <= 1e-10
    assert "notice" not in covered
    assert uncovered["analytic"] is None
    assert uncovered["notice"].startswith("simulator-only")

    assert main(["correlators", pair_file, "u1", "v", "--axes", "xx"]) == 0
    (entry,) = json.loads(capsys.readouterr().out)["correlators"]
    assert entry["notice"].startswith("simulator-only")
    assert -1.0 <= entry["simulated"] <= 1.0


def test_compile(triangle_file, capsys):
    """
    Test circuit emission with readout rotations.

    Parameters
    ----------
    triangle_file : str
        Graph document.
    capsys : pytest.CaptureFixture
        Captured output.
    """
    assert main(["compile", triangle_file, "--fuse", "--measure", "X"]) == 0
    circuit = parse_circuit_text(capsys.readouterr().out)
    assert circuit.n == 3
    assert circuit.zz_count == 3
    assert circuit.measured_qubits == (0, 1, 2)


def test_exit_codes(pair_file, tmp_path):
    """
    Test exit status 1 on validation errors and 2 on I/O errors.

    Parameters
    ----------
    pair_file : str
        Graph document.
    tmp_path : Path
        Temporary directory.
    """
    bad = tmp_path / "bad.json"
    bad.write_text('{"U":["a","b"],"V":[],"W":[],"arcs":[{"from":"a","to":"b","weight":1.0}]}', encoding="utf-8")
    assert main(["edist", str(bad)]) == 1
    assert main(["edist", pair_file, "--vertex", "nobody"]) == 1
    assert main(["correlators", pair_file, "u1", "u1"]) == 1
    assert main(["edist", str(tmp_path / "missing.json")]) == 2
    assert main(["--project_file", str(tmp_path / "missing.toml"), "edist", pair_file]) == 2
