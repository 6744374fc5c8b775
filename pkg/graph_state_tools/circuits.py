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
Module compiles graph-state preparation into single-qubit rotations and ZZ interactions.

Circuit text format, one gate per line after a header::

    qubits 3
    RY q0 1.5707963267948966
    ZZ q0 q1 0.7853981633974483
    measure q0 q1 q2
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from graph_state_tools.graphs import GraphSpec
from graph_state_tools.statevector import (
    AXES,
    InitParams,
    StateVector,
    apply_rotation,
    apply_zz,
    graph_gates,
)

logger = logging.getLogger(__name__)

# Rotation W with W^dagger Z W = sigma_axis; applied before a ZZ block or a Z readout.
BASIS_CHANGE: Dict[str, Tuple[str, float]] = {
    "X": ("Y", -np.pi / 2),
    "Y": ("X", np.pi / 2),
}


class CircuitError(ValueError):
    """
    Raised for malformed circuits or circuit text.
    """


@dataclass(frozen=True)
class Rotation:
    """
    Single-qubit rotation R_axis(angle) = exp(-i angle sigma_axis / 2).
    """

    qubit: int
    axis: str
    angle: float

    def inverse(self) -> "Rotation":
        """
        Return the inverse rotation.

        Returns
        -------
        Rotation
            Rotation by -angle about the same axis.
        """
        return Rotation(self.qubit, self.axis, -self.angle)

    @property
    def qubits(self) -> Tuple[int, ...]:
        """
        Qubits the gate acts on.

        Returns
        -------
        Tuple[int, ...]
            One-element tuple.
        """
        return (self.qubit,)


@dataclass(frozen=True)
class ZZ:
    """
    ZZ interaction exp(-i angle sigma_z sigma_z / 2) on two qubits.
    """

    q1: int
    q2: int
    angle: float

    @property
    def qubits(self) -> Tuple[int, ...]:
        """
        Qubits the gate acts on.

        Returns
        -------
        Tuple[int, ...]
            The two qubits.
        """
        return (self.q1, self.q2)


Gate = Union[Rotation, ZZ]


@dataclass(frozen=True)
class Circuit:
    """
    Ordered gate list on n qubits, with the qubits to be read out.

    Parameters
    ----------
    n : int
        Number of qubits.
    gates : Tuple[Gate, ...]
        Gates in application order.
    measured_qubits : Tuple[int, ...], optional
        Qubits read out by a sampler; None means all of them.

    Raises
    ------
    CircuitError
        If an index is out of range or an angle is not finite.
    """

    n: int
    gates: Tuple[Gate, ...] = field(default_factory=tuple)
    measured_qubits: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.measured_qubits is not None:
            object.__setattr__(self, "measured_qubits", tuple(self.measured_qubits))
        if self.n < 0:
            raise CircuitError(f"negative qubit count {self.n}")
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.n:
                    raise CircuitError(f"qubit index {q} out of range in {gate}")
            if not math.isfinite(gate.angle):
                raise CircuitError(f"non-finite angle in {gate}")
            if isinstance(gate, Rotation) and gate.axis not in AXES:
                raise CircuitError(f"unknown rotation axis in {gate}")
            if isinstance(gate, ZZ) and gate.q1 == gate.q2:
                raise CircuitError(f"ZZ on a single qubit: {gate}")
        if self.measured_qubits is not None:
            for q in self.measured_qubits:
                if not 0 <= q < self.n:
                    raise CircuitError(f"measured qubit {q} out of range")
            if len(set(self.measured_qubits)) != len(self.measured_qubits):
                raise CircuitError(f"measured qubits repeat: {self.measured_qubits}")

    @property
    def zz_count(self) -> int:
        """
        Number of two-qubit gates.

        Returns
        -------
        int
            ZZ count.
        """
        return sum(isinstance(gate, ZZ) for gate in self.gates)


def _wrap(qubit: int, axis: str) -> Tuple[List[Rotation], List[Rotation]]:
    if axis == "Z":
        return [], []
    rotation = Rotation(qubit, *BASIS_CHANGE[axis])
    return [rotation], [rotation.inverse()]


def compile_state_prep(g: GraphSpec, params: InitParams, fuse: bool = False) -> Circuit:
    """
    Compile the graph-state preparation.

    Every qubit gets R_Y(theta) then R_Z(alpha). Each nonzero coupling between axes A and
    B becomes a ZZ interaction with the A-side and B-side qubits rotated into the Z basis
    before it and back after it; Z sides are left bare. The circuit prepares the state of
    `build_graph_state` up to a global phase.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    fuse : bool, optional
        Cancel back-to-back inverse basis changes, by default False.

    Returns
    -------
    Circuit
        The preparation circuit.

    Examples
    --------
    >>> from graph_state_tools.graphs import GraphSpec
    >>> g = GraphSpec(("a",), (), ())
    >>> compile_state_prep(g, InitParams({"a": (0.3, 0.7)})).gates
    (Rotation(qubit=0, axis='Y', angle=0.3), Rotation(qubit=0, axis='Z', angle=0.7))
    """
    angles = params.to_array(g.index_map)
    gates: List[Gate] = []
    for qubit, (theta, alpha) in enumerate(angles):
        gates.append(Rotation(qubit, "Y", float(theta)))
        gates.append(Rotation(qubit, "Z", float(alpha)))
    for q1, axis1, q2, axis2, angle in graph_gates(g):
        pre1, post1 = _wrap(q1, axis1)
        pre2, post2 = _wrap(q2, axis2)
        gates.extend(pre1 + pre2)
        gates.append(ZZ(q1, q2, angle))
        gates.extend(post1 + post2)
    circuit = Circuit(g.n_qubits, tuple(gates))
    if fuse:
        circuit = cancel_inverse_rotations(circuit)
    logger.debug("compiled %d gates (%d ZZ) on %d qubits", len(circuit.gates), circuit.zz_count, circuit.n)
    return circuit


def cancel_inverse_rotations(c: Circuit, atol: float = 1e-15) -> Circuit:
    """
    Remove pairs of mutually inverse rotations with nothing in between on their qubit.

    Gates on other qubits commute with both rotations, so only the last surviving gate
    on the same qubit has to be checked.

    Parameters
    ----------
    c : Circuit
        The circuit.
    atol : float, optional
        Tolerance on the summed angle, by default 1e-15.

    Returns
    -------
    Circuit
        Equivalent circuit with the pairs removed.
    """
    out: List[Optional[Gate]] = []
    stacks: List[List[int]] = [[] for _ in range(c.n)]
    for gate in c.gates:
        if isinstance(gate, Rotation) and stacks[gate.qubit]:
            previous = out[stacks[gate.qubit][-1]]
            if (
                isinstance(previous, Rotation)
                and previous.axis == gate.axis
                and abs(previous.angle + gate.angle) <= atol
            ):
                out[stacks[gate.qubit].pop()] = None
                continue
        out.append(gate)
        for q in gate.qubits:
            stacks[q].append(len(out) - 1)
    kept = tuple(gate for gate in out if gate is not None)
    logger.debug("fusion removed %d rotations", len(c.gates) - len(kept))
    return Circuit(c.n, kept, c.measured_qubits)


def compile_measurement(axis: str, qubit: int) -> List[Rotation]:
    """
    Rotations after which a Z-basis readout of `qubit` measures sigma_axis.

    Parameters
    ----------
    axis : str
        One of "X", "Y", "Z", case-insensitive.
    qubit : int
        Qubit index.

    Returns
    -------
    List[Rotation]
        [R_Y(-pi/2)] for X, [R_X(pi/2)] for Y and [] for Z.
    """
    axis = axis.upper()
    if axis not in AXES:
        raise CircuitError(f"unknown measurement axis '{axis}'")
    pre, _ = _wrap(qubit, axis)
    return pre


def with_measurement(
    c: Circuit, axis: str, qubits: Optional[Sequence[int]] = None
) -> Circuit:
    """
    Append basis rotations so that a Z readout of `qubits` measures sigma_axis.

    Parameters
    ----------
    c : Circuit
        Preparation circuit.
    axis : str
        Measurement axis.
    qubits : Sequence[int], optional
        Qubits to read out, by default all.

    Returns
    -------
    Circuit
        Circuit with rotations appended and `measured_qubits` set.
    """
    qubits = tuple(range(c.n)) if qubits is None else tuple(qubits)
    gates = list(c.gates)
    for q in qubits:
        gates.extend(compile_measurement(axis, q))
    return Circuit(c.n, tuple(gates), qubits)


def simulate_circuit(c: Circuit, state: Optional[StateVector] = None) -> StateVector:
    """
    Run a circuit on the statevector engine.

    Parameters
    ----------
    c : Circuit
        The circuit.
    state : StateVector, optional
        Input state, modified in place; by default |0...0>.

    Returns
    -------
    StateVector
        Output state.
    """
    if state is None:
        state = StateVector.zeros(c.n)
    elif state.n != c.n:
        raise CircuitError(f"state has {state.n} qubits, circuit {c.n}")
    for gate in c.gates:
        apply_gate(state, gate)
    return state


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """
    Apply a single gate.

    Parameters
    ----------
    state : StateVector
        State, modified in place.
    gate : Gate
        Rotation or ZZ.

    Returns
    -------
    StateVector
        The same state object.
    """
    if isinstance(gate, Rotation):
        return apply_rotation(state, gate.qubit, gate.axis, gate.angle)
    return apply_zz(state, gate.q1, gate.q2, gate.angle)


def emit_circuit_text(c: Circuit) -> str:
    """
    Render a circuit as text, one gate per line, angles as shortest round-trip floats.

    Parameters
    ----------
    c : Circuit
        The circuit.

    Returns
    -------
    str
        Text without trailing newline.

    Examples
    --------
    >>> emit_circuit_text(Circuit(1, (Rotation(0, "Y", np.pi / 2),)))
    'qubits 1\\nRY q0 1.5707963267948966'
    """
    lines = [f"qubits {c.n}"]
    for gate in c.gates:
        if isinstance(gate, Rotation):
            lines.append(f"R{gate.axis} q{gate.qubit} {float(gate.angle)!r}")
        else:
            lines.append(f"ZZ q{gate.q1} q{gate.q2} {float(gate.angle)!r}")
    if c.measured_qubits is not None:
        lines.append(" ".join(["measure"] + [f"q{q}" for q in c.measured_qubits]))
    return "\n".join(lines)


def _qubit(token: str, lineno: int) -> int:
    if not token.startswith("q") or not token[1:].isdigit():
        raise CircuitError(f"line {lineno}: expected qubit token like 'q0', got '{token}'")
    return int(token[1:])


def _angle(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError as e:
        raise CircuitError(f"line {lineno}: invalid angle '{token}'") from e


def parse_circuit_text(text: str) -> Circuit:
    """
    Parse the text produced by `emit_circuit_text`.

    Parameters
    ----------
    text : str
        Circuit text.

    Returns
    -------
    Circuit
        The circuit.

    Raises
    ------
    CircuitError
        On unknown instructions or malformed operands.
    """
    lines = [line.split() for line in text.splitlines()]
    lines = [(k + 1, tokens) for k, tokens in enumerate(lines) if tokens]
    if not lines or lines[0][1][0] != "qubits" or len(lines[0][1]) != 2 or not lines[0][1][1].isdigit():
        raise CircuitError("circuit text must start with 'qubits N'")
    n = int(lines[0][1][1])
    gates: List[Gate] = []
    measured: Optional[Tuple[int, ...]] = None
    for lineno, tokens in lines[1:]:
        op = tokens[0]
        if op in ("RX", "RY", "RZ") and len(tokens) == 3:
            gates.append(Rotation(_qubit(tokens[1], lineno), op[1], _angle(tokens[2], lineno)))
        elif op == "ZZ" and len(tokens) == 4:
            gates.append(ZZ(_qubit(tokens[1], lineno), _qubit(tokens[2], lineno), _angle(tokens[3], lineno)))
        elif op == "measure":
            measured = tuple(_qubit(token, lineno) for token in tokens[1:])
        else:
            raise CircuitError(f"line {lineno}: cannot parse '{' '.join(tokens)}'")
    return Circuit(n, tuple(gates), measured)


def random_circuit(rng: np.random.Generator, n: int, n_gates: int) -> Circuit:
    """
    Draw a random circuit of rotations and ZZ interactions.

    Parameters
    ----------
    rng : np.random.Generator
        Random number generator.
    n : int
        Number of qubits.
    n_gates : int
        Number of gates.

    Returns
    -------
    Circuit
        The circuit.
    """
    gates: List[Gate] = []
    for _ in range(n_gates):
        angle = float(rng.uniform(-np.pi, np.pi))
        if n > 1 and rng.random() < 0.3:
            q1, q2 = rng.choice(n, size=2, replace=False)
            gates.append(ZZ(int(q1), int(q2), angle))
        else:
            gates.append(Rotation(int(rng.integers(n)), str(rng.choice(AXES)), angle))
    return Circuit(n, tuple(gates))


def qubit_order(c: Circuit) -> Iterable[int]:
    """
    Qubits read out by the circuit, all of them when unset.

    Parameters
    ----------
    c : Circuit
        The circuit.

    Returns
    -------
    Iterable[int]
        Measured qubit indices.
    """
    return range(c.n) if c.measured_qubits is None else c.measured_qubits
