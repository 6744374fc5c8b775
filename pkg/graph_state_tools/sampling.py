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
Module provides noisy shot sampling of compiled circuits.

Noise is modeled by Monte Carlo trajectories over pure states: after every rotation a
sigma_x error hits the qubit with probability `single_qubit_x_flip`, after every ZZ
interaction a uniformly drawn non-identity two-qubit Pauli hits the pair with
probability `two_qubit_depolarizing`, and every measured bit is flipped with probability
`readout_flip`.
"""

import json
import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed

from graph_state_tools.circuits import (
    Circuit,
    Rotation,
    apply_gate,
    compile_state_prep,
    qubit_order,
    simulate_circuit,
    with_measurement,
)
from graph_state_tools.graphs import GraphSpec
from graph_state_tools.statevector import AXES, InitParams, StateVector, apply_pauli, probabilities
from graph_state_tools.utils import derive_seed, load_project

logger = logging.getLogger(__name__)

# Two-qubit Pauli k acts with PAULI_LABELS[k // 4] on the first and PAULI_LABELS[k % 4] on the second qubit.
PAULI_LABELS: Tuple[str, ...] = ("I", "X", "Y", "Z")

NOISE_KEYS = ("readout_flip", "single_qubit_x_flip", "two_qubit_depolarizing", "shots", "seed", "shots_per_block")


class NoiseConfigError(ValueError):
    """
    Raised for invalid noise configurations.
    """


@dataclass(frozen=True)
class NoiseConfig:
    """
    Noise levels and sampling budget.

    Parameters
    ----------
    readout_flip : float
        Probability of flipping each measured bit.
    single_qubit_x_flip : float
        Probability of a sigma_x error after each single-qubit gate.
    two_qubit_depolarizing : float
        Probability of a random non-identity Pauli after each ZZ interaction.
    shots : int
        Number of shots, at least 1.
    seed : int
        Root seed, a 64-bit unsigned integer.
    shots_per_block : int
        Shots drawn per random stream; results do not depend on the worker count.
    """

    readout_flip: float = 0.0
    single_qubit_x_flip: float = 0.0
    two_qubit_depolarizing: float = 0.0
    shots: int = 8192
    seed: int = 0
    shots_per_block: int = 2048

    def __post_init__(self):
        for name in ("readout_flip", "single_qubit_x_flip", "two_qubit_depolarizing"):
            p = getattr(self, name)
            if isinstance(p, bool) or not isinstance(p, (int, float)) or not 0.0 <= p <= 1.0:
                raise NoiseConfigError(f"{name} must be a probability in [0, 1], got {p!r}")
        for name in ("shots", "shots_per_block"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
                raise NoiseConfigError(f"{name} must be an integer >= 1, got {value!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise NoiseConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")

    @property
    def is_noiseless(self) -> bool:
        """
        True when every error probability is zero.

        Returns
        -------
        bool
            Whether the configuration is noiseless.
        """
        return self.readout_flip == 0 and self.single_qubit_x_flip == 0 and self.two_qubit_depolarizing == 0

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], defaults: Optional["NoiseConfig"] = None) -> "NoiseConfig":
        """
        Build a configuration from a mapping, missing keys taken from `defaults`.

        Parameters
        ----------
        data : Mapping[str, Any]
            Keys among readout_flip, single_qubit_x_flip, two_qubit_depolarizing, shots,
            seed and shots_per_block.
        defaults : NoiseConfig, optional
            Fallback values, by default `NoiseConfig()`.

        Returns
        -------
        NoiseConfig
            The configuration.
        """
        unknown = set(data) - set(NOISE_KEYS)
        if unknown:
            raise NoiseConfigError(f"unknown noise keys {sorted(unknown)}")
        return replace(defaults or cls(), **dict(data))

    def to_dict(self) -> Dict[str, Any]:
        """
        Return the configuration as a dictionary.

        Returns
        -------
        Dict[str, Any]
            All fields.
        """
        return asdict(self)


def noise_preset(name: str, project: Optional[Dict[str, Any]] = None) -> NoiseConfig:
    """
    Named noise levels from the project's [Noise.<name>] section, sampling budget from [Sampling].

    Parameters
    ----------
    name : str
        Preset name, "noiseless" or "typical" in the packaged defaults.
    project : Dict[str, Any], optional
        Project configuration, the packaged defaults when None.

    Returns
    -------
    NoiseConfig
        The preset.
    """
    project = project or load_project()
    presets = project.get("Noise", {})
    if name not in presets:
        raise NoiseConfigError(f"unknown noise preset '{name}', available: {sorted(presets)}")
    return NoiseConfig.from_dict({**project.get("Sampling", {}), **presets[name]})


def load_noise_config(path: Union[str, Path], project: Optional[Dict[str, Any]] = None) -> NoiseConfig:
    """
    Read a JSON noise configuration file.

    Keys missing from the file take the noiseless preset values.

    Parameters
    ----------
    path : str or Path
        Path to the JSON file.
    project : Dict[str, Any], optional
        Project configuration supplying the defaults.

    Returns
    -------
    NoiseConfig
        The configuration.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise NoiseConfigError(f"malformed noise file {path}: {e}") from e
    if not isinstance(data, dict):
        raise NoiseConfigError(f"noise file {path} must hold a JSON object")
    return NoiseConfig.from_dict(data, defaults=noise_preset("noiseless", project))


@dataclass(frozen=True)
class ShotCounts:
    """
    Histogram of measured bitstrings.

    Bitstrings have length n with qubit 0 as the rightmost character. Unmeasured qubits
    read 0.

    Parameters
    ----------
    counts : Dict[str, int]
        Mapping bitstring -> count.
    n : int
        Number of qubits.
    measured_qubits : Tuple[int, ...]
        Qubits that were read out.
    """

    counts: Dict[str, int]
    n: int
    measured_qubits: Tuple[int, ...]

    @property
    def total(self) -> int:
        """
        Number of shots.

        Returns
        -------
        int
            Sum of all counts.
        """
        return sum(self.counts.values())


def simulate_trajectory(c: Circuit, x_flips: np.ndarray, pauli_codes: np.ndarray) -> StateVector:
    """
    Run one noisy trajectory of a circuit.

    Parameters
    ----------
    c : Circuit
        The circuit.
    x_flips : np.ndarray
        Boolean per rotation, in gate order: insert sigma_x after it.
    pauli_codes : np.ndarray
        Integer per ZZ interaction, in gate order: 0 for none, 1..15 for the two-qubit Pauli
        inserted after it.

    Returns
    -------
    StateVector
        Final state.
    """
    state = StateVector.zeros(c.n)
    r = z = 0
    for gate in c.gates:
        apply_gate(state, gate)
        if isinstance(gate, Rotation):
            if x_flips[r]:
                apply_pauli(state, gate.qubit, "X")
            r += 1
        else:
            code = int(pauli_codes[z])
            for q, label in ((gate.q1, PAULI_LABELS[code // 4]), (gate.q2, PAULI_LABELS[code % 4])):
                if label != "I":
                    apply_pauli(state, q, label)
            z += 1
    return state


def _sample_block(
    c: Circuit, noise: NoiseConfig, seed: np.random.SeedSequence, size: int, ideal: np.ndarray
) -> np.ndarray:
    """
    Draw `size` noisy outcomes as integer basis indices.
    """
    rng = np.random.default_rng(seed)
    dim = ideal.size
    n_rot = len(c.gates) - c.zz_count
    n_zz = c.zz_count

    x_flips = rng.random((size, n_rot)) < noise.single_qubit_x_flip
    hit = rng.random((size, n_zz)) < noise.two_qubit_depolarizing
    codes = np.where(hit, rng.integers(1, 16, size=(size, n_zz)), 0)

    outcomes = np.empty(size, dtype=np.int64)
    patterns = np.concatenate([x_flips.astype(np.int64), codes], axis=1)
    if patterns.shape[1] == 0 or not patterns.any():
        outcomes[:] = rng.choice(dim, size=size, p=ideal)
    else:
        unique, inverse = np.unique(patterns, axis=0, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        for k, pattern in enumerate(unique):
            members = np.flatnonzero(inverse == k)
            if pattern.any():
                p = probabilities(simulate_trajectory(c, pattern[:n_rot].astype(bool), pattern[n_rot:]))
            else:
                p = ideal
            outcomes[members] = rng.choice(dim, size=members.size, p=p)

    measured = np.fromiter(qubit_order(c), dtype=np.int64)
    mask = int(np.sum(np.left_shift(1, measured))) if measured.size else 0
    outcomes &= mask
    if noise.readout_flip > 0 and measured.size:
        flips = rng.random((size, measured.size)) < noise.readout_flip
        outcomes ^= flips.astype(np.int64) @ np.left_shift(1, measured)
    return outcomes


def sample_counts(c: Circuit, noise: NoiseConfig, n_jobs: int = 1) -> ShotCounts:
    """
    Sample measurement outcomes of a circuit under noise.

    Shots are split into blocks of `noise.shots_per_block`; block k draws from the k-th
    child of `SeedSequence(noise.seed)`, so the counts depend on the seed only. Shots of
    a block that share an error pattern are simulated once.

    Parameters
    ----------
    c : Circuit
        The circuit, starting from |0...0>.
    noise : NoiseConfig
        Noise levels, shot count and seed.
    n_jobs : int, optional
        Number of parallel workers for the blocks, by default 1.

    Returns
    -------
    ShotCounts
        The histogram.

    Examples
    --------
    >>> from graph_state_tools.circuits import Circuit
    >>> sample_counts(Circuit(2), NoiseConfig(shots=10)).counts
    {'00': 10}
    """
    ideal = probabilities(simulate_circuit(c))
    n_blocks = math.ceil(noise.shots / noise.shots_per_block)
    sizes = [min(noise.shots_per_block, noise.shots - k * noise.shots_per_block) for k in range(n_blocks)]
    seeds = np.random.SeedSequence(noise.seed).spawn(n_blocks)
    if n_jobs == 1 or n_blocks == 1:
        blocks = [_sample_block(c, noise, seed, size, ideal) for seed, size in zip(seeds, sizes)]
    else:
        blocks = Parallel(n_jobs=n_jobs)(
            delayed(_sample_block)(c, noise, seed, size, ideal) for seed, size in zip(seeds, sizes)
        )
    values, counts = np.unique(np.concatenate(blocks), return_counts=True)
    histogram = {format(int(v), f"0{c.n}b"): int(k) for v, k in zip(values, counts)}
    logger.debug("sampled %d shots in %d blocks", noise.shots, n_blocks)
    return ShotCounts(histogram, c.n, tuple(qubit_order(c)))


def estimate_mean_z(counts: ShotCounts, qubit: int) -> Tuple[float, float]:
    """
    Estimate <sigma_z> of a qubit as P(0) - P(1).

    Parameters
    ----------
    counts : ShotCounts
        The histogram.
    qubit : int
        Measured qubit.

    Returns
    -------
    Tuple[float, float]
        Estimate and its standard error sqrt((1 - estimate**2) / shots).

    Examples
    --------
    >>> estimate, stderr = estimate_mean_z(ShotCounts({"0": 500, "1": 500}, 1, (0,)), 0)
    >>> estimate, round(stderr, 4)
    (0.0, 0.0316)
    """
    if not 0 <= qubit < counts.n:
        raise ValueError(f"qubit index {qubit} out of range for {counts.n} qubits")
    if qubit not in counts.measured_qubits:
        raise ValueError(f"qubit {qubit} was not measured")
    total = counts.total
    signed = sum(k * (1 - 2 * ((int(bits, 2) >> qubit) & 1)) for bits, k in counts.counts.items())
    estimate = signed / total
    return estimate, math.sqrt(max(0.0, 1.0 - estimate**2) / total)


def estimate_bloch_vectors(
    g: GraphSpec,
    params: InitParams,
    noise: NoiseConfig,
    vertices: Optional[Sequence[str]] = None,
    fuse: bool = False,
    n_jobs: int = 1,
) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """
    Estimate the mean spins of several vertices from three measurement settings.

    Each setting rotates every requested qubit into the X, Y or Z basis at once; the
    setting for axis k samples with seed `derive_seed(noise.seed, k)`.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    noise : NoiseConfig
        Noise levels, shots per setting and root seed.
    vertices : Sequence[str], optional
        Vertices to estimate, by default all.
    fuse : bool, optional
        Compile with inverse-rotation cancellation, by default False.
    n_jobs : int, optional
        Workers for the shot blocks, by default 1.

    Returns
    -------
    Dict[str, Tuple[np.ndarray, np.ndarray]]
        Mapping vertex -> (estimates, standard errors), each of length 3 in x, y, z order.
    """
    vertices = list(g.vertices if vertices is None else vertices)
    qubits = [g.index_map[x] for x in vertices]
    prep = compile_state_prep(g, params, fuse=fuse)
    estimates = np.zeros((len(vertices), 3))
    stderrs = np.zeros((len(vertices), 3))
    for k, axis in enumerate(AXES):
        circuit = with_measurement(prep, axis, qubits)
        counts = sample_counts(circuit, replace(noise, seed=derive_seed(noise.seed, k)), n_jobs=n_jobs)
        for j, q in enumerate(qubits):
            estimates[j, k], stderrs[j, k] = estimate_mean_z(counts, q)
    return {x: (estimates[j], stderrs[j]) for j, x in enumerate(vertices)}


def estimate_mean_spin(
    g: GraphSpec, params: InitParams, x: str, noise: NoiseConfig, fuse: bool = False
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Estimate the mean spin of one vertex.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x : str
        Vertex label.
    noise : NoiseConfig
        Noise levels, shots per setting and root seed.
    fuse : bool, optional
        Compile with inverse-rotation cancellation, by default False.

    Returns
    -------
    Tuple[np.ndarray, np.ndarray]
        Estimates and standard errors of (<sigma_x>, <sigma_y>, <sigma_z>).
    """
    return estimate_bloch_vectors(g, params, noise, [x], fuse=fuse)[x]


def entanglement_from_estimates(estimates: np.ndarray, stderrs: np.ndarray) -> Tuple[float, float]:
    """
    Entanglement distance from estimated mean spins, with first-order error propagation.

    Parameters
    ----------
    estimates : np.ndarray
        Estimated (<sigma_x>, <sigma_y>, <sigma_z>).
    stderrs : np.ndarray
        Their standard errors.

    Returns
    -------
    Tuple[float, float]
        1 - sum(estimates**2) and sqrt(sum((2 |estimate| stderr)**2)).
    """
    estimates = np.asarray(estimates, dtype=float)
    stderrs = np.asarray(stderrs, dtype=float)
    value = 1.0 - float(np.sum(estimates**2))
    return value, float(np.sqrt(np.sum((2 * np.abs(estimates) * stderrs) ** 2)))


def estimate_entanglement_distance(
    g: GraphSpec, params: InitParams, x: str, noise: NoiseConfig, fuse: bool = False
) -> Tuple[float, float]:
    """
    Estimate the entanglement distance of a vertex from noisy shots.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x : str
        Vertex label.
    noise : NoiseConfig
        Noise levels, shots per measurement setting and root seed.
    fuse : bool, optional
        Compile with inverse-rotation cancellation, by default False.

    Returns
    -------
    Tuple[float, float]
        Estimate and propagated standard error.
    """
    return entanglement_from_estimates(*estimate_mean_spin(g, params, x, noise, fuse=fuse))


def estimate_entanglement_distances(
    g: GraphSpec,
    params: InitParams,
    noise: NoiseConfig,
    vertices: Optional[Iterable[str]] = None,
    fuse: bool = False,
    n_jobs: int = 1,
) -> Dict[str, Tuple[float, float]]:
    """
    Estimate entanglement distances of several vertices from shared measurement settings.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    noise : NoiseConfig
        Noise levels, shots per setting and root seed.
    vertices : Iterable[str], optional
        Vertices, by default all.
    fuse : bool, optional
        Compile with inverse-rotation cancellation, by default False.
    n_jobs : int, optional
        Workers for the shot blocks, by default 1.

    Returns
    -------
    Dict[str, Tuple[float, float]]
        Mapping vertex -> (estimate, standard error).
    """
    spins = estimate_bloch_vectors(
        g, params, noise, None if vertices is None else list(vertices), fuse=fuse, n_jobs=n_jobs
    )
    return {x: entanglement_from_estimates(*values) for x, values in spins.items()}
