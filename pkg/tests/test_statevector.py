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
Module provides statevector test functions.
"""

from functools import reduce

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_almost_equal
from scipy.linalg import expm

from graph_state_tools.graphs import (
    GraphSpec,
    GraphValidationError,
    QubitIndexMap,
    random_tripartite_graph,
    triangle_graph,
)
from graph_state_tools.statevector import (
    InitParams,
    PauliString,
    StateVector,
    apply_pauli,
    apply_rotation,
    apply_two_axis_rotation,
    apply_zz,
    bloch_vector,
    build_graph_state,
    entanglement_distance_sim,
    expect_pauli,
    graph_gates,
    init_product_state,
    overlap,
    parse_init,
    probabilities,
)

PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def dense_operator(n: int, ops: dict) -> np.ndarray:
    """
    Dense 2**n x 2**n operator with single-qubit factors `ops`, qubit 0 least significant.

    Parameters
    ----------
    n : int
        Number of qubits.
    ops : dict
        Mapping qubit -> 2x2 matrix, identity elsewhere.

    Returns
    -------
    np.ndarray
        The operator.
    """
    return reduce(np.kron, [ops.get(q, PAULI["I"]) for q in reversed(range(n))])


def random_state(rng: np.random.Generator, n: int) -> StateVector:
    """
    Draw a random normalized state.

    Parameters
    ----------
    rng : np.random.Generator
        Random number generator.
    n : int
        Number of qubits.

    Returns
    -------
    StateVector
        The state.
    """
    a = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(a / np.linalg.norm(a))


def random_params(rng: np.random.Generator, g: GraphSpec) -> InitParams:
    """
    Draw random initial angles for every vertex.

    Parameters
    ----------
    rng : np.random.Generator
        Random number generator.
    g : GraphSpec
        The graph.

    Returns
    -------
    InitParams
        Angles with theta in [0, pi] and alpha in [0, 2 pi).
    """
    return InitParams({x: (rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)) for x in g.vertices})


@pytest.fixture(name="one_qubit")
def fixture_one_qubit() -> QubitIndexMap:
    """
    Index map of a single U vertex "a".

    Returns
    -------
    QubitIndexMap
        The map.
    """
    return QubitIndexMap(["a"], [], [])


def test_init_product_state(one_qubit):
    """
    Test product-state preparation on the basic examples.

    Parameters
    ----------
    one_qubit : QubitIndexMap
        Single-vertex map.
    """
    g = triangle_graph()
    psi = init_product_state(3, InitParams.uniform(g, 0.0, 0.0), g.index_map)
    assert_array_almost_equal(psi.amplitudes, np.eye(8)[0])

    psi = init_product_state(1, InitParams({"a": (np.pi, 0.0)}), one_qubit)
    assert_array_almost_equal(psi.amplitudes, [0, 1])

    psi = init_product_state(1, InitParams({"a": (np.pi / 2, np.pi / 2)}), one_qubit)
    assert_array_almost_equal(psi.amplitudes, np.array([1, 1j]) / np.sqrt(2))

    with pytest.raises(ValueError, match="missing initial parameters"):
        init_product_state(3, InitParams({"0": (0.0, 0.0)}), g.index_map)


def test_init_product_state_qubit_order():
    """
    Test that qubit 0 is the least significant bit and the |0...0> amplitude is the product of cosines.
    """
    g = GraphSpec(("a",), ("b",), ())
    psi = init_product_state(2, InitParams({"a": (np.pi, 0.0), "b": (0.0, 0.0)}), g.index_map)
    assert_array_almost_equal(psi.amplitudes, [0, 1, 0, 0])

    thetas = {"a": 0.4, "b": 1.3}
    psi = init_product_state(2, InitParams({x: (t, 0.7) for x, t in thetas.items()}), g.index_map)
    assert psi.amplitudes[0] == pytest.approx(np.cos(0.2) * np.cos(0.65))


def test_single_qubit_rotations():
    """
    Test rotations against their textbook action.
    """
    psi = apply_rotation(StateVector.zeros(1), 0, "Y", np.pi / 2)
    assert_array_almost_equal(psi.amplitudes, np.array([1, 1]) / np.sqrt(2))

    alpha = 0.9
    psi = apply_rotation(StateVector.zeros(1), 0, "Z", alpha)
    assert_array_almost_equal(psi.amplitudes, [np.exp(-0.5j * alpha), 0])

    rng = np.random.default_rng(1)
    psi = random_state(rng, 3)
    rotated = apply_rotation(psi.copy(), 1, "X", 2 * np.pi)
    assert_array_almost_equal(rotated.amplitudes, -psi.amplitudes)

    with pytest.raises(ValueError, match="out of range"):
        apply_rotation(psi, 3, "X", 1.0)


def test_rotations_match_dense_matrices():
    """
    Test single-qubit rotations and Pauli operators against dense matrix exponentials.
    """
    rng = np.random.default_rng(3)
    for _ in range(20):
        psi = random_state(rng, 3)
        q = int(rng.integers(3))
        axis = str(rng.choice(["X", "Y", "Z"]))
        angle = rng.uniform(-np.pi, np.pi)
        expected = dense_operator(3, {q: expm(-0.5j * angle * PAULI[axis])}) @ psi.amplitudes
        assert_allclose(apply_rotation(psi.copy(), q, axis, angle).amplitudes, expected, atol=1e-12)
        expected = dense_operator(3, {q: PAULI[axis]}) @ psi.amplitudes
        assert_allclose(apply_pauli(psi.copy(), q, axis).amplitudes, expected, atol=1e-12)


def test_two_axis_rotation_examples():
    """
    Test two-qubit rotations on |00>.
    """
    psi = apply_two_axis_rotation(StateVector.zeros(2), 0, "X", 1, "Y", 0.0)
    assert_array_almost_equal(psi.amplitudes, [1, 0, 0, 0])

    psi = apply_two_axis_rotation(StateVector.zeros(2), 0, "X", 1, "Y", np.pi)
    assert_array_almost_equal(psi.amplitudes, [0, 0, 0, 1])

    psi = apply_two_axis_rotation(StateVector.zeros(2), 0, "X", 1, "Y", np.pi / 2)
    assert_array_almost_equal(psi.amplitudes, np.array([1, 0, 0, 1]) / np.sqrt(2))

    with pytest.raises(ValueError, match="two different qubits"):
        apply_two_axis_rotation(StateVector.zeros(2), 1, "X", 1, "Y", 1.0)


def test_two_axis_rotation_matches_dense_matrices():
    """
    Test every axis pair on random 3-qubit states against the 4x4 matrix exponential.
    """
    rng = np.random.default_rng(5)
    for axis1 in "XYZ":
        for axis2 in "XYZ":
            psi = random_state(rng, 3)
            q1, q2 = (int(q) for q in rng.choice(3, size=2, replace=False))
            angle = rng.uniform(-np.pi, np.pi)
            generator = dense_operator(3, {q1: PAULI[axis1], q2: PAULI[axis2]})
            expected = expm(-0.5j * angle * generator) @ psi.amplitudes
            result = apply_two_axis_rotation(psi.copy(), q1, axis1, q2, axis2, angle)
            assert_allclose(result.amplitudes, expected, atol=1e-12)
            assert abs(result.norm() - 1.0) <= 1e-12


def test_zz_matches_dense_matrix():
    """
    Test the ZZ interaction against its matrix exponential.
    """
    rng = np.random.default_rng(6)
    psi = random_state(rng, 4)
    expected = expm(-0.35j * dense_operator(4, {0: PAULI["Z"], 3: PAULI["Z"]})) @ psi.amplitudes
    assert_allclose(apply_zz(psi.copy(), 3, 0, 0.7).amplitudes, expected, atol=1e-12)


def test_build_graph_state_zero_weights():
    """
    Test that zero weights leave the product state untouched.
    """
    rng = np.random.default_rng(8)
    g = triangle_graph()
    params = random_params(rng, g)
    assert_array_almost_equal(
        build_graph_state(g, params).amplitudes, init_product_state(3, params, g.index_map).amplitudes, decimal=12
    )


def test_build_graph_state_triangle():
    """
    Test the triangle with all qubits in |0> and only the U-V coupling at pi/2.
    """
    g = triangle_graph(np.pi / 2, 0.0, 0.0)
    psi = build_graph_state(g, InitParams.uniform(g, 0.0, 0.0))
    expected = np.zeros(8)
    expected[[0, 3]] = 1 / np.sqrt(2)
    assert_array_almost_equal(psi.amplitudes, expected, decimal=12)


def test_gate_order_is_irrelevant():
    """
    Test that shuffling the coupling gates yields the same state and keeps the norm.
    """
    rng = np.random.default_rng(11)
    for _ in range(20):
        g = random_tripartite_graph(rng)
        params = random_params(rng, g)
        gates = graph_gates(g)
        rng.shuffle(gates)
        psi = init_product_state(g.n_qubits, params, g.index_map)
        for gate in gates:
            apply_two_axis_rotation(psi, *gate)
        reference = build_graph_state(g, params)
        assert_allclose(psi.amplitudes, reference.amplitudes, atol=1e-12)
        assert abs(reference.norm() - 1.0) <= 1e-12


def test_expect_pauli():
    """
    Test expectations of basic states.
    """
    assert expect_pauli(StateVector.zeros(1), PauliString(((0, "Z"),))) == pytest.approx(1.0)
    plus = StateVector(np.array([1, 1]) / np.sqrt(2))
    assert expect_pauli(plus, PauliString.from_pairs([(0, "x")])) == pytest.approx(1.0)
    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert expect_pauli(bell, PauliString.from_pairs([(0, "Z"), (1, "Z")])) == pytest.approx(1.0)
    assert expect_pauli(bell, PauliString.from_pairs([(0, "Z")])) == pytest.approx(0.0)

    with pytest.raises(ValueError, match="twice"):
        PauliString.from_pairs([(0, "X"), (0, "Z")])
    with pytest.raises(ValueError, match="out of range"):
        expect_pauli(bell, PauliString.from_pairs([(2, "Z")]))


def test_expect_pauli_matches_dense():
    """
    Test Pauli-string expectations against dense operators.
    """
    rng = np.random.default_rng(12)
    for _ in range(20):
        psi = random_state(rng, 4)
        qubits = rng.choice(4, size=int(rng.integers(1, 5)), replace=False)
        terms = [(int(q), str(rng.choice(["X", "Y", "Z"]))) for q in qubits]
        op = dense_operator(4, {q: PAULI[a] for q, a in terms})
        expected = np.vdot(psi.amplitudes, op @ psi.amplitudes).real
        value = expect_pauli(psi, PauliString.from_pairs(terms))
        assert value == pytest.approx(expected, abs=1e-12)
        assert abs(value) <= 1 + 1e-12


def test_bloch_vector_matches_expect_pauli():
    """
    Test the reduced-density-matrix Bloch vector against single-qubit expectations.
    """
    rng = np.random.default_rng(13)
    psi = random_state(rng, 4)
    for q in range(4):
        expected = [expect_pauli(psi, PauliString(((q, a),))) for a in "XYZ"]
        assert_allclose(bloch_vector(psi, q), expected, atol=1e-12)


def test_entanglement_distance_sim():
    """
    Test entanglement distances of product states, a Bell state and a sigma_x eigenstate.
    """
    rng = np.random.default_rng(14)
    g = GraphSpec(("a", "b"), ("c",), ("d",))
    for _ in range(100):
        psi = init_product_state(4, random_params(rng, g), g.index_map)
        for q in range(4):
            assert abs(entanglement_distance_sim(psi, q)) <= 1e-12

    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert entanglement_distance_sim(bell, 0) == pytest.approx(1.0)

    for phis in ((0.3, 1.1, 2.0), (np.pi / 2, np.pi / 2, np.pi / 2)):
        g = triangle_graph(*phis)
        params = InitParams({"0": (np.pi / 2, 0.0), "1": (0.4, 1.0), "2": (2.0, 0.3)})
        assert abs(entanglement_distance_sim(build_graph_state(g, params), 0)) <= 1e-12


def test_parse_init_defaults():
    """
    Test that missing init entries default to zero and unknown vertices are rejected.
    """
    g = triangle_graph()
    params = parse_init({"init": {"1": {"theta": 0.5}}}, g)
    assert params["1"].theta == 0.5
    assert params["1"].alpha == 0.0
    assert params["0"].theta == 0.0
    with pytest.raises(GraphValidationError, match="unknown vertices"):
        parse_init({"init": {"9": {"theta": 0.5}}}, g)


def test_overlap_and_probabilities():
    """
    Test inner products and measurement probabilities.
    """
    plus = StateVector(np.array([1, 1]) / np.sqrt(2))
    assert overlap(plus, StateVector.zeros(1)) == pytest.approx(1 / np.sqrt(2))
    assert_array_almost_equal(probabilities(plus), [0.5, 0.5])
