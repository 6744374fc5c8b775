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
Module provides noisy-sampler test functions.
"""

import json

import numpy as np
import pytest

from graph_state_tools.analytic import entanglement_distance_analytic
from graph_state_tools.circuits import ZZ, Circuit, Rotation
from graph_state_tools.graphs import load_graph, random_tripartite_graph
from graph_state_tools.sampling import (
    NoiseConfig,
    NoiseConfigError,
    ShotCounts,
    entanglement_from_estimates,
    estimate_entanglement_distance,
    estimate_entanglement_distances,
    estimate_mean_z,
    load_noise_config,
    noise_preset,
    sample_counts,
)
from graph_state_tools.statevector import InitParams
from graph_state_tools.utils import triangle_graph_url


def within(value: float, expected: float, sigma: float, n_sigma: float = 5.0) -> bool:
    """
    Check that a sampled value lies within `n_sigma` standard deviations.

    Parameters
    ----------
    value : float
        Observed value.
    expected : float
        Expected value.
    sigma : float
        Standard deviation.
    n_sigma : float, optional
        Number of standard deviations, by default 5.

    Returns
    -------
    bool
        True if |value - expected| <= n_sigma * sigma.
    """
    return abs(value - expected) <= n_sigma * sigma


def test_ground_state_counts():
    """
    Test that the empty circuit always reads all zeros.
    """
    counts = sample_counts(Circuit(3), NoiseConfig(shots=1000))
    assert counts.counts == {"000": 1000}
    assert counts.total == 1000


def test_bitstring_orientation():
    """
    Test that qubit 0 is the rightmost character.
    """
    c = Circuit(2, (Rotation(0, "Y", np.pi),))
    assert sample_counts(c, NoiseConfig(shots=100)).counts == {"01": 100}


def test_unmeasured_qubits_read_zero():
    """
    Test that unmeasured qubits read 0.
    """
    c = Circuit(2, (Rotation(1, "Y", np.pi),), measured_qubits=(0,))
    counts = sample_counts(c, NoiseConfig(shots=500))
    assert counts.counts == {"00": 500}
    assert counts.measured_qubits == (0,)


def test_readout_flip_rate():
    """
    Test the readout flip rate on |0> at 10^5 shots.
    """
    shots = 100_000
    counts = sample_counts(Circuit(1), NoiseConfig(readout_flip=0.01, shots=shots, seed=5))
    p = 0.01
    assert within(counts.counts.get("1", 0) / shots, p, np.sqrt(p * (1 - p) / shots))


def test_x_flip_after_rotation():
    """
    Test that a certain sigma_x error follows the rotation.
    """
    c = Circuit(1, (Rotation(0, "Y", 0.0),))
    assert sample_counts(c, NoiseConfig(single_qubit_x_flip=1.0, shots=200)).counts == {"1": 200}


def test_two_qubit_depolarizing_distribution():
    """
    Test that a certain two-qubit error leaves |00> in 3 of 15 cases.
    """
    shots = 10_000
    c = Circuit(2, (ZZ(0, 1, 0.0),))
    counts = sample_counts(c, NoiseConfig(two_qubit_depolarizing=1.0, shots=shots, seed=8))
    p = 3 / 15
    assert within(counts.counts["00"] / shots, p, np.sqrt(p * (1 - p) / shots))
    for bits in ("01", "10", "11"):
        assert within(counts.counts[bits] / shots, 4 / 15, np.sqrt(4 / 15 * 11 / 15 / shots))


def test_half_superposition():
    """
    Test that R_Y(pi/2)|0> reads 0 and 1 with equal frequency.
    """
    shots = 20_000
    counts = sample_counts(Circuit(1, (Rotation(0, "Y", np.pi / 2),)), NoiseConfig(shots=shots, seed=2))
    assert within(counts.counts["0"] / shots, 0.5, np.sqrt(0.25 / shots))


def test_sampling_is_deterministic():
    """
    Test that counts depend on the seed and not on the number of workers.
    """
    c = Circuit(2, (Rotation(0, "Y", 1.0), ZZ(0, 1, 0.7), Rotation(1, "X", 0.4)))
    noise = NoiseConfig(readout_flip=0.05, single_qubit_x_flip=0.05, two_qubit_depolarizing=0.1, shots=5000, seed=42)
    noise = NoiseConfig.from_dict({"shots_per_block": 1000}, defaults=noise)
    first = sample_counts(c, noise)
    assert sample_counts(c, noise) == first
    assert sample_counts(c, noise, n_jobs=2) == first
    assert first.total == 5000
    other = sample_counts(c, NoiseConfig.from_dict({"seed": 43}, defaults=noise))
    assert other != first


def test_estimate_mean_z_examples():
    """
    Test the certain and the balanced histograms.
    """
    assert estimate_mean_z(ShotCounts({"0": 1000}, 1, (0,)), 0) == (1.0, 0.0)
    estimate, stderr = estimate_mean_z(ShotCounts({"0": 500, "1": 500}, 1, (0,)), 0)
    assert estimate == 0.0
    assert stderr == pytest.approx(np.sqrt(1 / 1000))
    estimate, _ = estimate_mean_z(ShotCounts({"10": 300, "01": 100}, 2, (0, 1)), 1)
    assert estimate == pytest.approx(-0.5)


def test_estimate_mean_z_errors():
    """
    Test out-of-range and unmeasured qubits.
    """
    counts = ShotCounts({"00": 10}, 2, (0,))
    with pytest.raises(ValueError, match="out of range"):
        estimate_mean_z(counts, 2)
    with pytest.raises(ValueError, match="was not measured"):
        estimate_mean_z(counts, 1)


def test_entanglement_from_estimates():
    """
    Test the distance and its propagated error.
    """
    value, stderr = entanglement_from_estimates(np.array([0.6, 0.0, 0.0]), np.array([0.01, 0.02, 0.03]))
    assert value == pytest.approx(0.64)
    assert stderr == pytest.approx(0.012)


def test_noiseless_estimates_match_analytic():
    """
    Test noiseless sampled entanglement distances against the closed forms.

    One hundred random graphs with up to three vertices per set, 10^5 shots per
    setting. A graph passes when every vertex lies within five propagated standard
    errors; at most one graph may fail.
    """
    rng = np.random.default_rng(12)
    passed = 0
    for trial in range(100):
        g = random_tripartite_graph(rng, max_part_size=3, p_arc=0.6)
        params = InitParams({x: (rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)) for x in g.vertices})
        estimates = estimate_entanglement_distances(g, params, NoiseConfig(shots=100_000, seed=trial))
        assert set(estimates) == set(g.vertices)
        passed += all(
            within(value, entanglement_distance_analytic(g, params, x), stderr)
            for x, (value, stderr) in estimates.items()
        )
    assert passed >= 99


def test_triangle_estimate():
    """
    Test the packaged triangle at the noisy preset, single-vertex entry point.
    """
    g, params = load_graph(triangle_graph_url)
    noise = NoiseConfig.from_dict({"shots": 32768}, defaults=noise_preset("typical"))
    value, stderr = estimate_entanglement_distance(g, params, "2", noise)
    assert stderr >= 0
    assert abs(value - entanglement_distance_analytic(g, params, "2")) <= 0.1


@pytest.mark.parametrize(
    "kwargs",
    [
        {"readout_flip": 1.5},
        {"single_qubit_x_flip": -0.1},
        {"two_qubit_depolarizing": "0.1"},
        {"shots": 0},
        {"shots_per_block": 2.5},
        {"seed": -1},
        {"seed": 2**64},
    ],
)
def test_invalid_noise_config(kwargs):
    """
    Test rejection of invalid probabilities, shot counts and seeds.

    Parameters
    ----------
    kwargs : dict
        Invalid field values.
    """
    with pytest.raises(NoiseConfigError):
        NoiseConfig(**kwargs)


def test_noise_presets():
    """
    Test the packaged presets.
    """
    typical = noise_preset("typical")
    assert (typical.readout_flip, typical.single_qubit_x_flip, typical.two_qubit_depolarizing) == (1e-2, 1e-4, 1e-2)
    assert typical.shots == 8192
    assert noise_preset("noiseless").is_noiseless
    with pytest.raises(NoiseConfigError, match="unknown noise preset"):
        noise_preset("loud")
    with pytest.raises(NoiseConfigError, match="unknown noise keys"):
        NoiseConfig.from_dict({"shot": 10})


def test_load_noise_config(tmp_path):
    """
    Test reading a partial noise file and rejecting malformed ones.

    Parameters
    ----------
    tmp_path : Path
        Temporary directory.
    """
    path = tmp_path / "noise.json"
    path.write_text(json.dumps({"readout_flip": 0.02, "seed": 7}), encoding="utf-8")
    noise = load_noise_config(path)
    assert noise.readout_flip == 0.02
    assert noise.seed == 7
    assert noise.two_qubit_depolarizing == 0.0
    assert noise.shots == 8192
    assert NoiseConfig.from_dict(noise.to_dict()) == noise

    path.write_text("{oops", encoding="utf-8")
    with pytest.raises(NoiseConfigError, match="malformed"):
        load_noise_config(path)
    path.write_text("[0.1]", encoding="utf-8")
    with pytest.raises(NoiseConfigError, match="JSON object"):
        load_noise_config(path)
