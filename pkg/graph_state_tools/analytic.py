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
Module provides closed-form mean spins, entanglement distances and same-set correlators.

Every quantity is evaluated from the graph and the initial angles alone. A neighbor y
of set A coupled with angle phi contributes the factor

    f_A(phi) = cos(phi) + i sin(phi) m_A(y),

where m_A(y) is the Bloch component of y along the Pauli axis set A uses in its
couplings (x for U, y for V, z for W).
"""

import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

import numpy as np

from graph_state_tools.graphs import (
    PARTS,
    GraphSpec,
    GraphValidationError,
    NeighborhoodStats,
    coupling_angle,
    neighbors,
    other_parts,
)
from graph_state_tools.statevector import GATE_AXIS, InitParams

logger = logging.getLogger(__name__)

# Phase turning the pair local coefficient into the coefficient of each axis.
AXIS_PHASE: Dict[str, Dict[str, complex]] = {
    "U": {"Z": 1.0, "Y": 1j},
    "V": {"Z": 1.0, "X": -1j},
    "W": {"X": 1.0, "Y": -1j},
}

COVERED_AXES: Dict[str, Tuple[str, ...]] = {
    "U": ("XX", "YY", "ZZ", "YZ"),
    "V": ("YY", "XX", "ZZ", "ZX"),
    "W": ("ZZ", "XX", "YY", "XY"),
}


@dataclass(frozen=True)
class MeanSpin:
    """
    Bloch vector (<sigma_x>, <sigma_y>, <sigma_z>) of one qubit.
    """

    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        """
        Return the components as an array.

        Returns
        -------
        np.ndarray
            Array [x, y, z].
        """
        return np.array([self.x, self.y, self.z])

    def squared_norm(self) -> float:
        """
        Return x**2 + y**2 + z**2.

        Returns
        -------
        float
            Squared length of the Bloch vector.
        """
        return self.x**2 + self.y**2 + self.z**2


@dataclass(frozen=True)
class LocalCoefficient:
    """
    Complex coefficient of a vertex: a local term times one factor per neighbor.

    Parameters
    ----------
    local : complex
        Term depending on the vertex's own angles.
    factors : Tuple[complex, ...]
        Neighbor factors f_A(phi), one per neighbor in U, V, W then document order.
    """

    local: complex
    factors: Tuple[complex, ...] = ()

    @property
    def neighbor_product(self) -> complex:
        """
        Product of all neighbor factors, 1 for an isolated vertex.

        Returns
        -------
        complex
            The product.
        """
        return complex(np.prod(np.asarray(self.factors, dtype=np.complex128)))

    @property
    def value(self) -> complex:
        """
        The coefficient, local term times neighbor product.

        Returns
        -------
        complex
            a_u, c_v or c_w.
        """
        return self.local * self.neighbor_product


@dataclass(frozen=True)
class PairCoefficients:
    """
    Coefficients governing the correlators of a same-set vertex pair.

    Parameters
    ----------
    z1, z2 : complex
        Products over the union of both neighborhoods.
    local1, local2 : complex
        Pair local terms of the first and second vertex.
    part : str
        Set both vertices belong to.
    """

    z1: complex
    z2: complex
    local1: complex
    local2: complex
    part: str

    def correlator(self, axis1: str, axis2: str) -> float:
        """
        Two-point correlator for axes different from the set's coupling axis.

        Parameters
        ----------
        axis1, axis2 : str
            Pauli axes of the first and second vertex.

        Returns
        -------
        float
            1/2 Re(z1 g1 g2) + 1/2 Re(z2 g1 conj(g2)), g the axis coefficients.
        """
        phases = AXIS_PHASE[self.part]
        if axis1 not in phases or axis2 not in phases:
            raise NotImplementedError("no closed form in source; use simulator")
        g1 = phases[axis1] * self.local1
        g2 = phases[axis2] * self.local2
        return float(0.5 * (self.z1 * g1 * g2).real + 0.5 * (self.z2 * g1 * np.conj(g2)).real)


def bloch_component(part: str, theta: float, alpha: float) -> float:
    """
    Bloch component of a vertex of `part` along the axis its set couples with.

    Parameters
    ----------
    part : str
        Set identifier.
    theta : float
        Polar angle.
    alpha : float
        Azimuthal angle.

    Returns
    -------
    float
        cos(alpha) sin(theta) for U, sin(alpha) sin(theta) for V, cos(theta) for W.
    """
    if part == "U":
        return float(np.cos(alpha) * np.sin(theta))
    if part == "V":
        return float(np.sin(alpha) * np.sin(theta))
    if part == "W":
        return float(np.cos(theta))
    raise GraphValidationError(f"unknown set '{part}'")


def neighbor_factor(phi: float, m: float) -> complex:
    """
    Return cos(phi) + i sin(phi) m.

    Parameters
    ----------
    phi : float
        Coupling angle.
    m : float
        Bloch component of the neighbor.

    Returns
    -------
    complex
        The factor.
    """
    return complex(np.cos(phi), np.sin(phi) * m)


def _component(g: GraphSpec, params: InitParams, y: str) -> float:
    return bloch_component(g.part_of(y), params[y].theta, params[y].alpha)


def local_coefficient(g: GraphSpec, params: InitParams, x: str) -> LocalCoefficient:
    """
    Local coefficient of a vertex: a_u for U, c_v for V, c_w for W.

    a_u = (sin(a) sin(t) + i cos(t)) F, c_v = (cos(t) + i cos(a) sin(t)) F and
    c_w = exp(i a) sin(t) F, where F is the product of the neighbor factors.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x : str
        Vertex label.

    Returns
    -------
    LocalCoefficient
        The coefficient.

    Examples
    --------
    >>> from graph_state_tools.graphs import triangle_graph
    >>> g = triangle_graph()
    >>> local_coefficient(g, InitParams.uniform(g, 0.0, 0.0), "0").value
    1j
    """
    part = g.part_of(x)
    theta, alpha = params[x].theta, params[x].alpha
    if part == "U":
        local = complex(np.sin(alpha) * np.sin(theta), np.cos(theta))
    elif part == "V":
        local = complex(np.cos(theta), np.cos(alpha) * np.sin(theta))
    else:
        local = complex(np.exp(1j * alpha) * np.sin(theta))

    factors = []
    for target in other_parts(part):
        for y in neighbors(g, x, target):
            factors.append(neighbor_factor(coupling_angle(g, x, y), _component(g, params, y)))
    return LocalCoefficient(local, tuple(factors))


def mean_spin_analytic(g: GraphSpec, params: InitParams, x: str) -> MeanSpin:
    """
    Closed-form mean spin of a vertex.

    The component along the set's own coupling axis is left unchanged by every gate; the
    other two are the real and imaginary parts of the local coefficient.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x : str
        Vertex label.

    Returns
    -------
    MeanSpin
        Bloch vector of the vertex's qubit.
    """
    part = g.part_of(x)
    theta, alpha = params[x].theta, params[x].alpha
    c = local_coefficient(g, params, x).value
    m = bloch_component(part, theta, alpha)
    if part == "U":
        return MeanSpin(m, c.real, c.imag)
    if part == "V":
        return MeanSpin(c.imag, m, c.real)
    return MeanSpin(c.real, c.imag, m)


def entanglement_distance_analytic(g: GraphSpec, params: InitParams, x: str) -> float:
    """
    Closed-form entanglement distance 1 - |mean spin|**2 of a vertex.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x : str
        Vertex label.

    Returns
    -------
    float
        Value in [0, 1].
    """
    return float(1.0 - mean_spin_analytic(g, params, x).squared_norm())


def _prefactor(part: str, theta: float, alpha: float) -> float:
    # squared modulus of the local term, equal to 1 - m**2
    return 1.0 - bloch_component(part, theta, alpha) ** 2


def entanglement_distance_closed_form(g: GraphSpec, params: InitParams, x: str) -> float:
    """
    Entanglement distance as prefactor times (1 - product of squared factor moduli).

    The prefactor is sin^2(a) sin^2(t) + cos^2(t) for U, cos^2(a) sin^2(t) + cos^2(t)
    for V and sin^2(t) for W.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x : str
        Vertex label.

    Returns
    -------
    float
        Same value as `entanglement_distance_analytic`.
    """
    coefficient = local_coefficient(g, params, x)
    moduli = np.abs(np.asarray(coefficient.factors, dtype=np.complex128)) ** 2
    prefactor = _prefactor(g.part_of(x), params[x].theta, params[x].alpha)
    return float(prefactor * (1.0 - np.prod(moduli)))


def entanglement_distance_uniform(
    deg_a: int, deg_b: int, part: str, theta: float, alpha: float, phi: float
) -> float:
    """
    Entanglement distance of a vertex when all weights equal `phi` and all vertices
    share the initial angles.

    Parameters
    ----------
    deg_a, deg_b : int
        Degrees toward the two other sets, in U, V, W order (for a V vertex: toward U,
        then toward W).
    part : str
        Set of the vertex.
    theta : float
        Common polar angle.
    alpha : float
        Common azimuthal angle.
    phi : float
        Common weight.

    Returns
    -------
    float
        Value in [0, 1].

    Examples
    --------
    >>> entanglement_distance_uniform(0, 0, "U", 1.0, 0.4, 0.7)
    0.0
    """
    if deg_a < 0 or deg_b < 0:
        raise ValueError(f"degrees must be non-negative, got {deg_a}, {deg_b}")
    product = 1.0
    for target, deg in zip(other_parts(part), (deg_a, deg_b)):
        m = bloch_component(target, theta, alpha)
        product *= (np.cos(phi) ** 2 + np.sin(phi) ** 2 * m**2) ** deg
    return float(_prefactor(part, theta, alpha) * (1.0 - product))


def pair_local_coefficient(part: str, theta: float, alpha: float) -> complex:
    """
    Local term of a vertex in the pair coefficients.

    Parameters
    ----------
    part : str
        Set identifier.
    theta : float
        Polar angle.
    alpha : float
        Azimuthal angle.

    Returns
    -------
    complex
        cos(t) - i sin(a) sin(t) for U, cos(t) + i cos(a) sin(t) for V,
        sin(t) exp(i a) for W.
    """
    if part == "U":
        return complex(np.cos(theta), -np.sin(alpha) * np.sin(theta))
    if part == "V":
        return complex(np.cos(theta), np.cos(alpha) * np.sin(theta))
    if part == "W":
        return complex(np.sin(theta) * np.exp(1j * alpha))
    raise GraphValidationError(f"unknown set '{part}'")


def pair_coefficients(g: GraphSpec, params: InitParams, x1: str, x2: str) -> PairCoefficients:
    """
    Pair coefficients z1, z2 of two vertices of the same set.

    Each neighbor y of either vertex contributes once: an exclusive neighbor of x1
    gives f(phi1) to both z1 and z2, an exclusive neighbor of x2 gives f(phi2) to z1
    and its conjugate to z2, and a common neighbor gives f(phi1 + phi2) to z1 and
    f(phi1 - phi2) to z2.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x1, x2 : str
        Two different vertices of the same set.

    Returns
    -------
    PairCoefficients
        Coefficients and pair local terms.
    """
    part = g.part_of(x1)
    if g.part_of(x2) != part:
        raise GraphValidationError("pair statistics defined for same-set pairs only")
    if x1 == x2:
        raise GraphValidationError(f"pair coefficients need two different vertices, got '{x1}' twice")
    z1 = 1.0 + 0.0j
    z2 = 1.0 + 0.0j
    for target in other_parts(part):
        n1 = neighbors(g, x1, target)
        n2 = neighbors(g, x2, target)
        for y in g.part(target):
            if y not in n1 and y not in n2:
                continue
            m = _component(g, params, y)
            phi1 = coupling_angle(g, x1, y)
            phi2 = coupling_angle(g, x2, y)
            if y in n1 and y in n2:
                z1 *= neighbor_factor(phi1 + phi2, m)
                z2 *= neighbor_factor(phi1 - phi2, m)
            elif y in n1:
                f = neighbor_factor(phi1, m)
                z1 *= f
                z2 *= f
            else:
                f = neighbor_factor(phi2, m)
                z1 *= f
                z2 *= np.conj(f)
    return PairCoefficients(
        z1=complex(z1),
        z2=complex(z2),
        local1=pair_local_coefficient(part, params[x1].theta, params[x1].alpha),
        local2=pair_local_coefficient(part, params[x2].theta, params[x2].alpha),
        part=part,
    )


def uniform_pair_coefficients(
    stats_per_set: Mapping[str, NeighborhoodStats],
    angles: Mapping[str, Tuple[float, float]],
    phi: float,
    part: str,
) -> PairCoefficients:
    """
    Pair coefficients when all weights equal `phi` and angles are uniform per set.

    z1 = prod_A f_A(phi)**|N1 sym-diff N2| f_A(2 phi)**|N1 & N2| and
    z2 = prod_A f_A(phi)**|N1 - N2| conj(f_A(phi))**|N2 - N1|.

    Parameters
    ----------
    stats_per_set : Mapping[str, NeighborhoodStats]
        Statistics of the pair toward each of the two other sets.
    angles : Mapping[str, Tuple[float, float]]
        (theta, alpha) of each set, the pair's own set included.
    phi : float
        Common weight.
    part : str
        Set of the pair.

    Returns
    -------
    PairCoefficients
        Coefficients with equal local terms.
    """
    targets = other_parts(part)
    if set(stats_per_set) != set(targets):
        raise ValueError(f"statistics must be given for sets {targets}, got {sorted(stats_per_set)}")
    z1 = 1.0 + 0.0j
    z2 = 1.0 + 0.0j
    for target in targets:
        stats = stats_per_set[target]
        if stats.symmetric_difference != stats.exclusive_first + stats.exclusive_second:
            raise ValueError(f"inconsistent neighborhood counts toward {target}: {stats}")
        m = bloch_component(target, *angles[target])
        f = neighbor_factor(phi, m)
        z1 *= f**stats.symmetric_difference * neighbor_factor(2 * phi, m) ** stats.common
        z2 *= f**stats.exclusive_first * np.conj(f) ** stats.exclusive_second
    local = pair_local_coefficient(part, *angles[part])
    return PairCoefficients(complex(z1), complex(z2), local, local, part)


def covered_axes(part: str) -> Tuple[str, ...]:
    """
    Axis combinations with a closed-form correlator for a same-set pair.

    Parameters
    ----------
    part : str
        Set identifier.

    Returns
    -------
    Tuple[str, ...]
        Two-letter axis combinations, e.g. "YZ".
    """
    if part not in PARTS:
        raise GraphValidationError(f"unknown set '{part}'")
    return COVERED_AXES[part]


def correlator_analytic(g: GraphSpec, params: InitParams, x1: str, x2: str, axis1: str, axis2: str) -> float:
    """
    Closed-form two-point correlator <sigma_axis1(x1) sigma_axis2(x2)> of a same-set pair.

    Covered combinations are XX, YY, ZZ, YZ for U pairs; YY, XX, ZZ, ZX for V pairs and
    ZZ, XX, YY, XY for W pairs. A combination covered with the vertices swapped is
    accepted as well.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams
        Initial angles.
    x1, x2 : str
        Two different vertices of the same set.
    axis1, axis2 : str
        Pauli axes, case-insensitive.

    Returns
    -------
    float
        Correlator in [-1, 1].

    Raises
    ------
    GraphValidationError
        If the vertices coincide or are in different sets.
    NotImplementedError
        If the axis combination has no closed form.
    """
    axis1, axis2 = axis1.upper(), axis2.upper()
    if x1 == x2:
        raise GraphValidationError(f"correlators need two different vertices, got '{x1}' twice")
    part = g.part_of(x1)
    if g.part_of(x2) != part:
        raise GraphValidationError("pair statistics defined for same-set pairs only")
    covered = covered_axes(part)
    if axis1 + axis2 not in covered and axis2 + axis1 not in covered:
        raise NotImplementedError("no closed form in source; use simulator")

    gate_axis = GATE_AXIS[part]
    if axis1 == gate_axis and axis2 == gate_axis:
        # both observables commute with every gate
        return _component(g, params, x1) * _component(g, params, x2)
    return pair_coefficients(g, params, x1, x2).correlator(axis1, axis2)
