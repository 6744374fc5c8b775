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
Module provides dense statevector simulation of tripartite graph states.

Basis state index b has qubit k in state (b >> k) & 1, i.e. qubit 0 is the least
significant bit, and |0> is the +1 eigenstate of sigma_z.
"""

import json
import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np

from graph_state_tools.graphs import GraphSpec, GraphValidationError, QubitIndexMap

logger = logging.getLogger(__name__)

AXES: Tuple[str, ...] = ("X", "Y", "Z")

# Pauli operator each set contributes to its couplings.
GATE_AXIS: Dict[str, str] = {"U": "X", "V": "Y", "W": "Z"}

MAX_QUBITS = 24


@dataclass(frozen=True)
class BlochAngles:
    """
    Initial Bloch angles of one qubit, cos(theta/2)|0> + exp(i alpha) sin(theta/2)|1>.

    Parameters
    ----------
    theta : float
        Polar angle in radians.
    alpha : float
        Azimuthal angle in radians.
    """

    theta: float = 0.0
    alpha: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.alpha)):
            raise ValueError(f"initial angles must be finite, got theta={self.theta}, alpha={self.alpha}")


class InitParams(Mapping[str, BlochAngles]):
    """
    Per-vertex initial Bloch angles.

    Parameters
    ----------
    values : Mapping[str, BlochAngles or Tuple[float, float]]
        Mapping vertex label -> angles.

    Examples
    --------
    >>> params = InitParams({"u0": (1.0, 0.5)})
    >>> params["u0"].theta
    1.0
    """

    def __init__(self, values: Optional[Mapping[str, Union[BlochAngles, Tuple[float, float]]]] = None):
        self._values: Dict[str, BlochAngles] = {}
        for label, value in (values or {}).items():
            self._values[label] = value if isinstance(value, BlochAngles) else BlochAngles(*map(float, value))

    def __getitem__(self, label: str) -> BlochAngles:
        return self._values[label]

    def __iter__(self):
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __repr__(self) -> str:
        return f"InitParams({self._values!r})"

    @classmethod
    def uniform(cls, g: GraphSpec, theta: float, alpha: float) -> "InitParams":
        """
        Give every vertex of `g` the same angles.

        Parameters
        ----------
        g : GraphSpec
            The graph.
        theta : float
            Polar angle.
        alpha : float
            Azimuthal angle.

        Returns
        -------
        InitParams
            Uniform parameters.
        """
        return cls({label: BlochAngles(theta, alpha) for label in g.vertices})

    @classmethod
    def per_set(cls, g: GraphSpec, angles: Mapping[str, Tuple[float, float]]) -> "InitParams":
        """
        Give every vertex the angles of its set.

        Parameters
        ----------
        g : GraphSpec
            The graph.
        angles : Mapping[str, Tuple[float, float]]
            Mapping set identifier -> (theta, alpha).

        Returns
        -------
        InitParams
            Per-set uniform parameters.
        """
        return cls({label: BlochAngles(*angles[g.part_of(label)]) for label in g.vertices})

    def to_array(self, index_map: QubitIndexMap) -> np.ndarray:
        """
        Return the angles as an array ordered by qubit.

        Parameters
        ----------
        index_map : QubitIndexMap
            Vertex-to-qubit map; every vertex must have parameters.

        Returns
        -------
        np.ndarray
            Array of shape (n, 2) with columns theta, alpha.
        """
        missing = [label for label in index_map if label not in self._values]
        if missing:
            raise ValueError(f"missing initial parameters for vertices {missing}")
        return np.array([[self._values[label].theta, self._values[label].alpha] for label in index_map])


def parse_init(document: Union[str, dict], g: GraphSpec) -> InitParams:
    """
    Read the optional "init" block of a graph document.

    Vertices without an entry default to theta = 0, alpha = 0.

    Parameters
    ----------
    document : str or dict
        Graph document as JSON text or decoded object.
    g : GraphSpec
        The graph parsed from the same document.

    Returns
    -------
    InitParams
        Parameters for every vertex of `g`.

    Raises
    ------
    GraphValidationError
        If the block names an unknown vertex or holds non-numeric angles.
    """
    data = json.loads(document) if isinstance(document, str) else document
    block = data.get("init", {}) or {}
    if not isinstance(block, dict):
        raise GraphValidationError("'init' must be an object mapping vertex labels to angles")
    unknown = [label for label in block if label not in g.index_map]
    if unknown:
        raise GraphValidationError(f"'init' names unknown vertices {unknown}")
    values = {}
    for label in g.vertices:
        entry = block.get(label, {})
        try:
            values[label] = BlochAngles(float(entry.get("theta", 0.0)), float(entry.get("alpha", 0.0)))
        except (TypeError, ValueError, AttributeError) as e:
            raise GraphValidationError(f"invalid initial angles for vertex '{label}': {entry!r}") from e
    return InitParams(values)


@dataclass(frozen=True)
class PauliString:
    """
    Tensor product of single-qubit Pauli operators, identity elsewhere.

    Parameters
    ----------
    terms : Tuple[Tuple[int, str], ...]
        Pairs (qubit index, axis), qubit indices distinct.

    Examples
    --------
    >>> PauliString.from_pairs([(0, "z"), (1, "Z")]).terms
    ((0, 'Z'), (1, 'Z'))
    """

    terms: Tuple[Tuple[int, str], ...]

    def __post_init__(self):
        qubits = [q for q, _ in self.terms]
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"Pauli string acts twice on a qubit: {self.terms}")
        for q, axis in self.terms:
            if axis not in AXES:
                raise ValueError(f"unknown Pauli axis '{axis}'")
            if q < 0:
                raise ValueError(f"negative qubit index {q}")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, str]]) -> "PauliString":
        """
        Build a Pauli string from (qubit, axis) pairs, axes case-insensitive.

        Parameters
        ----------
        pairs : Iterable[Tuple[int, str]]
            Qubit/axis pairs.

        Returns
        -------
        PauliString
            The Pauli string.
        """
        return cls(tuple((int(q), str(axis).upper()) for q, axis in pairs))


class StateVector:
    """
    Dense amplitude array of an n-qubit pure state.

    Gate functions in this module modify the state in place and return it.

    Parameters
    ----------
    amplitudes : np.ndarray
        Complex array of length 2**n.
    """

    def __init__(self, amplitudes: np.ndarray):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        n = int(amplitudes.size).bit_length() - 1
        if amplitudes.ndim != 1 or amplitudes.size != 1 << n:
            raise ValueError(f"amplitude array length {amplitudes.size} is not a power of two")
        self.amplitudes = amplitudes
        self.n = n

    @classmethod
    def zeros(cls, n: int) -> "StateVector":
        """
        Return |0...0> on n qubits.

        Parameters
        ----------
        n : int
            Number of qubits.

        Returns
        -------
        StateVector
            Computational basis state 0.
        """
        check_size(n)
        amplitudes = np.zeros(1 << n, dtype=np.complex128)
        amplitudes[0] = 1.0
        return cls(amplitudes)

    def copy(self) -> "StateVector":
        """
        Return an independent copy.

        Returns
        -------
        StateVector
            Copy of the state.
        """
        return StateVector(self.amplitudes.copy())

    def norm(self) -> float:
        """
        Return the squared norm sum |amplitude|**2.

        Returns
        -------
        float
            Squared norm.
        """
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def qubit_view(self, qubit: int) -> np.ndarray:
        """
        Return a view with the given qubit as the middle axis.

        Parameters
        ----------
        qubit : int
            Qubit index.

        Returns
        -------
        np.ndarray
            View of shape (2**(n-qubit-1), 2, 2**qubit).
        """
        self.check_qubit(qubit)
        return self.amplitudes.reshape(1 << (self.n - qubit - 1), 2, 1 << qubit)

    def check_qubit(self, qubit: int):
        """
        Raise ValueError unless 0 <= qubit < n.

        Parameters
        ----------
        qubit : int
            Qubit index.
        """
        if not 0 <= qubit < self.n:
            raise ValueError(f"qubit index {qubit} out of range for {self.n} qubits")


def check_size(n: int):
    """
    Raise ValueError if an n-qubit amplitude array would exceed the size cap.

    Parameters
    ----------
    n : int
        Number of qubits.
    """
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceed the dense simulation cap of {MAX_QUBITS}")


def single_qubit_state(theta: float, alpha: float) -> np.ndarray:
    """
    Return cos(theta/2)|0> + exp(i alpha) sin(theta/2)|1>.

    Parameters
    ----------
    theta : float
        Polar angle.
    alpha : float
        Azimuthal angle.

    Returns
    -------
    np.ndarray
        Complex array of length 2.
    """
    return np.array([np.cos(theta / 2), np.exp(1j * alpha) * np.sin(theta / 2)], dtype=np.complex128)


def init_product_state(n: int, params: InitParams, index_map: QubitIndexMap) -> StateVector:
    """
    Prepare the separable initial state of all qubits.

    Parameters
    ----------
    n : int
        Number of qubits, equal to len(index_map).
    params : InitParams
        Angles for every vertex.
    index_map : QubitIndexMap
        Vertex-to-qubit map.

    Returns
    -------
    StateVector
        Normalized product state.

    Examples
    --------
    >>> from graph_state_tools.graphs import QubitIndexMap
    >>> psi = init_product_state(1, InitParams({"a": (np.pi, 0.0)}), QubitIndexMap(["a"], [], []))
    >>> np.round(abs(psi.amplitudes), 12)
    array([0., 1.])
    """
    if n != len(index_map):
        raise ValueError(f"qubit count {n} does not match {len(index_map)} vertices")
    check_size(n)
    angles = params.to_array(index_map)
    amplitudes = np.ones(1, dtype=np.complex128)
    for theta, alpha in angles:
        amplitudes = np.kron(single_qubit_state(theta, alpha), amplitudes)
    return StateVector(amplitudes)


def rotation_matrix(axis: str, angle: float) -> np.ndarray:
    """
    Return R_axis(angle) = exp(-i angle sigma_axis / 2).

    Parameters
    ----------
    axis : str
        One of "X", "Y", "Z".
    angle : float
        Rotation angle in radians.

    Returns
    -------
    np.ndarray
        2x2 unitary.
    """
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    if axis == "X":
        return np.array([[c, -1j * s], [-1j * s, c]])
    if axis == "Y":
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if axis == "Z":
        return np.array([[np.exp(-0.5j * angle), 0], [0, np.exp(0.5j * angle)]])
    raise ValueError(f"unknown rotation axis '{axis}'")


def apply_rotation(state: StateVector, qubit: int, axis: str, angle: float) -> StateVector:
    """
    Apply R_axis(angle) to one qubit.

    Parameters
    ----------
    state : StateVector
        State, modified in place.
    qubit : int
        Target qubit.
    axis : str
        One of "X", "Y", "Z".
    angle : float
        Rotation angle in radians.

    Returns
    -------
    StateVector
        The same state object.
    """
    view = state.qubit_view(qubit)
    if axis == "Z":
        view[:, 0, :] *= np.exp(-0.5j * angle)
        view[:, 1, :] *= np.exp(0.5j * angle)
        return state
    m = rotation_matrix(axis, angle)
    v0 = view[:, 0, :].copy()
    v1 = view[:, 1, :]
    view[:, 0, :] = m[0, 0] * v0 + m[0, 1] * v1
    view[:, 1, :] = m[1, 0] * v0 + m[1, 1] * view[:, 1, :]
    return state


def apply_pauli(state: StateVector, qubit: int, axis: str) -> StateVector:
    """
    Apply sigma_axis to one qubit.

    Parameters
    ----------
    state : StateVector
        State, modified in place.
    qubit : int
        Target qubit.
    axis : str
        One of "X", "Y", "Z".

    Returns
    -------
    StateVector
        The same state object.
    """
    view = state.qubit_view(qubit)
    if axis == "X":
        view[:, [0, 1], :] = view[:, [1, 0], :]
    elif axis == "Y":
        v0 = view[:, 0, :].copy()
        view[:, 0, :] = -1j * view[:, 1, :]
        view[:, 1, :] = 1j * v0
    elif axis == "Z":
        view[:, 1, :] *= -1
    else:
        raise ValueError(f"unknown Pauli axis '{axis}'")
    return state


def apply_two_axis_rotation(
    state: StateVector, q1: int, axis1: str, q2: int, axis2: str, angle: float
) -> StateVector:
    """
    Apply exp(-i angle/2 sigma_axis1(q1) sigma_axis2(q2)).

    The generator squares to the identity, so the gate is
    cos(angle/2) I - i sin(angle/2) sigma_axis1(q1) sigma_axis2(q2).

    Parameters
    ----------
    state : StateVector
        State, modified in place.
    q1 : int
        First qubit.
    axis1 : str
        Pauli axis acting on `q1`.
    q2 : int
        Second qubit, different from `q1`.
    axis2 : str
        Pauli axis acting on `q2`.
    angle : float
        Rotation angle in radians.

    Returns
    -------
    StateVector
        The same state object.
    """
    if q1 == q2:
        raise ValueError(f"two-qubit rotation needs two different qubits, got {q1} twice")
    state.check_qubit(q1)
    state.check_qubit(q2)
    if angle == 0.0:
        return state
    if axis1 == "Z" and axis2 == "Z":
        return apply_zz(state, q1, q2, angle)
    flipped = state.copy()
    apply_pauli(flipped, q1, axis1)
    apply_pauli(flipped, q2, axis2)
    state.amplitudes *= np.cos(angle / 2)
    state.amplitudes += -1j * np.sin(angle / 2) * flipped.amplitudes
    return state


def apply_zz(state: StateVector, q1: int, q2: int, angle: float) -> StateVector:
    """
    Apply the ZZ interaction exp(-i angle/2 sigma_z(q1) sigma_z(q2)).

    Parameters
    ----------
    state : StateVector
        State, modified in place.
    q1, q2 : int
        Two different qubits.
    angle : float
        Interaction angle in radians.

    Returns
    -------
    StateVector
        The same state object.
    """
    if q1 == q2:
        raise ValueError(f"ZZ interaction needs two different qubits, got {q1} twice")
    state.check_qubit(q1)
    state.check_qubit(q2)
    index = np.arange(state.amplitudes.size)
    parity = ((index >> q1) ^ (index >> q2)) & 1
    phases = np.array([np.exp(-0.5j * angle), np.exp(0.5j * angle)])
    state.amplitudes *= phases[parity]
    return state


def graph_gates(g: GraphSpec) -> List[Tuple[int, str, int, str, float]]:
    """
    Two-qubit rotations that entangle the graph state.

    U-V couplings use sigma_x sigma_y, V-W couplings sigma_y sigma_z and U-W
    couplings sigma_x sigma_z. Zero couplings are skipped.

    Parameters
    ----------
    g : GraphSpec
        The graph.

    Returns
    -------
    List[Tuple[int, str, int, str, float]]
        Gates (q1, axis1, q2, axis2, angle) in first-appearance arc order.
    """
    index_map = g.index_map
    gates = []
    for a, b, angle in g.couplings():
        if angle == 0.0:
            continue
        gates.append((index_map[a], GATE_AXIS[g.part_of(a)], index_map[b], GATE_AXIS[g.part_of(b)], angle))
    return gates


def build_graph_state(g: GraphSpec, params: InitParams) -> StateVector:
    """
    Build the graph state: the product state followed by one rotation per coupling.

    All gates commute for tripartite graphs, so the order is immaterial.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles for every vertex.

    Returns
    -------
    StateVector
        The entangled state.
    """
    state = init_product_state(g.n_qubits, params, g.index_map)
    gates = graph_gates(g)
    for q1, axis1, q2, axis2, angle in gates:
        apply_two_axis_rotation(state, q1, axis1, q2, axis2, angle)
    logger.debug("built %d-qubit graph state with %d gates", g.n_qubits, len(gates))
    return state


def expect_pauli(state: StateVector, p: PauliString) -> float:
    """
    Exact expectation value <psi|P|psi> of a Pauli string.

    Parameters
    ----------
    state : StateVector
        The state, left unchanged.
    p : PauliString
        Observable.

    Returns
    -------
    float
        Real expectation value.

    Examples
    --------
    >>> expect_pauli(StateVector.zeros(1), PauliString(((0, "Z"),)))
    1.0
    """
    flipped = state.copy()
    for qubit, axis in p.terms:
        apply_pauli(flipped, qubit, axis)
    return float(np.vdot(state.amplitudes, flipped.amplitudes).real)


def bloch_vector(state: StateVector, qubit: int) -> np.ndarray:
    """
    Mean spin (<sigma_x>, <sigma_y>, <sigma_z>) of one qubit.

    Computed from the reduced density matrix in a single pass.

    Parameters
    ----------
    state : StateVector
        The state.
    qubit : int
        Qubit index.

    Returns
    -------
    np.ndarray
        Array of length 3.
    """
    view = state.qubit_view(qubit)
    v0, v1 = view[:, 0, :], view[:, 1, :]
    rho00 = np.vdot(v0, v0).real
    rho11 = np.vdot(v1, v1).real
    rho01 = np.vdot(v1, v0)
    return np.array([2 * rho01.real, -2 * rho01.imag, rho00 - rho11])


def entanglement_distance_sim(state: StateVector, qubit: int) -> float:
    """
    Entanglement distance 1 - |mean spin|**2 of one qubit.

    Parameters
    ----------
    state : StateVector
        The state.
    qubit : int
        Qubit index.

    Returns
    -------
    float
        Value in [0, 1].
    """
    b = bloch_vector(state, qubit)
    return float(1.0 - np.dot(b, b))


def overlap(a: StateVector, b: StateVector) -> complex:
    """
    Inner product <a|b>.

    Parameters
    ----------
    a, b : StateVector
        States with the same qubit count.

    Returns
    -------
    complex
        The overlap.
    """
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} and {b.n}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def probabilities(state: StateVector) -> np.ndarray:
    """
    Measurement probabilities in the computational basis.

    Parameters
    ----------
    state : StateVector
        The state.

    Returns
    -------
    np.ndarray
        |amplitude|**2, renormalized to sum to one.
    """
    p = np.abs(state.amplitudes) ** 2
    return p / p.sum()
