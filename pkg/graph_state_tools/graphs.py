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
Module provides weighted directed tripartite graphs and their neighborhood statistics.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

PARTS: Tuple[str, ...] = ("U", "V", "W")


class GraphValidationError(ValueError):
    """
    Raised when a graph document or a graph violates the tripartite invariants.
    """


@dataclass(frozen=True)
class Arc:
    """
    A weighted arc between vertices of two different sets.

    Parameters
    ----------
    source : str
        Label of the tail vertex.
    target : str
        Label of the head vertex.
    weight : float
        Gate angle in radians.
    """

    source: str
    target: str
    weight: float


@dataclass(frozen=True)
class NeighborhoodStats:
    """
    Neighborhood statistics of a same-set vertex pair toward one target set.

    Parameters
    ----------
    exclusive_first : int
        Number of target-set neighbors of the first vertex only.
    exclusive_second : int
        Number of target-set neighbors of the second vertex only.
    common : int
        Number of shared target-set neighbors.
    """

    exclusive_first: int
    exclusive_second: int
    common: int

    def __post_init__(self):
        if min(self.exclusive_first, self.exclusive_second, self.common) < 0:
            raise GraphValidationError("neighborhood counts must be non-negative")

    @property
    def symmetric_difference(self) -> int:
        """
        Number of neighbors belonging to exactly one of the two vertices.

        Returns
        -------
        int
            exclusive_first + exclusive_second.
        """
        return self.exclusive_first + self.exclusive_second

    @property
    def four_cycles(self) -> int:
        """
        Number of 4-cycles through both vertices via the target set.

        Returns
        -------
        int
            Binomial coefficient C(common, 2).
        """
        return math.comb(self.common, 2)

    def to_dict(self) -> Dict[str, int]:
        """
        Return all counts, including the derived ones, as a dictionary.

        Returns
        -------
        Dict[str, int]
            Mapping of count names to values.
        """
        return {
            "exclusive_first": self.exclusive_first,
            "exclusive_second": self.exclusive_second,
            "symmetric_difference": self.symmetric_difference,
            "common": self.common,
            "four_cycles": self.four_cycles,
        }


class QubitIndexMap:
    """
    Bijection between vertex labels and qubit indices.

    Indices are assigned by concatenating the U, V and W label lists in document order.

    Parameters
    ----------
    u_vertices, v_vertices, w_vertices : Sequence[str]
        Vertex labels of the three sets.

    Examples
    --------
    >>> index_map = QubitIndexMap(["a"], ["b", "c"], ["d"])
    >>> index_map["c"]
    2
    """

    def __init__(self, u_vertices: Sequence[str], v_vertices: Sequence[str], w_vertices: Sequence[str]):
        self._labels: Tuple[str, ...] = tuple(u_vertices) + tuple(v_vertices) + tuple(w_vertices)
        self._index: Dict[str, int] = {label: k for k, label in enumerate(self._labels)}

    def __getitem__(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError as e:
            raise GraphValidationError(f"unknown vertex '{label}'") from e

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self._labels)

    def __iter__(self):
        return iter(self._labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QubitIndexMap) and self._labels == other._labels

    def __hash__(self) -> int:
        return hash(self._labels)

    def label(self, index: int) -> str:
        """
        Return the vertex label of a qubit.

        Parameters
        ----------
        index : int
            Qubit index.

        Returns
        -------
        str
            Vertex label.
        """
        return self._labels[index]

    def to_dict(self) -> Dict[str, int]:
        """
        Return the map as a plain dictionary.

        Returns
        -------
        Dict[str, int]
            Mapping vertex label -> qubit index.
        """
        return dict(self._index)


@dataclass(frozen=True)
class GraphSpec:
    """
    Weighted directed tripartite graph G(U, V, W, E).

    Arcs with identical orientation between the same pair are merged into one arc by
    summing their weights; arc order follows first appearance.

    Parameters
    ----------
    u_vertices, v_vertices, w_vertices : Tuple[str, ...]
        Vertex labels of the three disjoint sets, in document order.
    arcs : Tuple[Arc, ...]
        Weighted arcs; every arc joins two different sets.

    Raises
    ------
    GraphValidationError
        If labels repeat, an arc stays within one set, an endpoint is unknown or a
        weight is not finite.
    """

    u_vertices: Tuple[str, ...]
    v_vertices: Tuple[str, ...]
    w_vertices: Tuple[str, ...]
    arcs: Tuple[Arc, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "u_vertices", tuple(self.u_vertices))
        object.__setattr__(self, "v_vertices", tuple(self.v_vertices))
        object.__setattr__(self, "w_vertices", tuple(self.w_vertices))

        seen: Dict[str, str] = {}
        for part, labels in zip(PARTS, (self.u_vertices, self.v_vertices, self.w_vertices)):
            for label in labels:
                if not isinstance(label, str):
                    raise GraphValidationError(f"vertex label {label!r} in {part} is not a string")
                if label in seen:
                    raise GraphValidationError(f"duplicate label '{label}' (in {seen[label]} and {part})")
                seen[label] = part

        merged: Dict[Tuple[str, str], float] = {}
        for arc in self.arcs:
            if not isinstance(arc.source, str) or not isinstance(arc.target, str):
                raise GraphValidationError(f"arc endpoints {arc.source!r}->{arc.target!r} are not vertex labels")
            if arc.source not in seen:
                raise GraphValidationError(f"unknown endpoint label '{arc.source}' in arc {arc.source}->{arc.target}")
            if arc.target not in seen:
                raise GraphValidationError(f"unknown endpoint label '{arc.target}' in arc {arc.source}->{arc.target}")
            if seen[arc.source] == seen[arc.target]:
                raise GraphValidationError(
                    f"intra-set arc {arc.source}->{arc.target} (both in {seen[arc.source]})"
                )
            try:
                finite = not isinstance(arc.weight, bool) and math.isfinite(float(arc.weight))
            except (OverflowError, TypeError, ValueError):
                finite = False
            if not finite:
                raise GraphValidationError(f"non-finite weight {arc.weight!r:.40} in arc {arc.source}->{arc.target}")
            key = (arc.source, arc.target)
            merged[key] = merged.get(key, 0.0) + float(arc.weight)
        object.__setattr__(self, "arcs", tuple(Arc(s, t, w) for (s, t), w in merged.items()))

    @cached_property
    def _part_of(self) -> Dict[str, str]:
        return {
            label: part
            for part, labels in zip(PARTS, (self.u_vertices, self.v_vertices, self.w_vertices))
            for label in labels
        }

    @cached_property
    def _couplings(self) -> Dict[frozenset, float]:
        couplings: Dict[frozenset, float] = {}
        for arc in self.arcs:
            key = frozenset((arc.source, arc.target))
            couplings[key] = couplings.get(key, 0.0) + arc.weight
        return couplings

    @cached_property
    def _adjacency(self) -> Dict[str, Dict[str, List[str]]]:
        adjacency: Dict[str, Dict[str, List[str]]] = {label: {p: [] for p in PARTS} for label in self._part_of}
        for key in self._couplings:
            a, b = tuple(key)
            adjacency[a][self._part_of[b]].append(b)
            adjacency[b][self._part_of[a]].append(a)
        order = self.index_map
        for label in adjacency:
            for part in PARTS:
                adjacency[label][part].sort(key=lambda y: order[y])
        return adjacency

    @cached_property
    def index_map(self) -> QubitIndexMap:
        """
        Qubit index of every vertex (U, then V, then W, in document order).

        Returns
        -------
        QubitIndexMap
            The vertex-to-qubit map.
        """
        return QubitIndexMap(self.u_vertices, self.v_vertices, self.w_vertices)

    @property
    def vertices(self) -> Tuple[str, ...]:
        """
        All vertex labels in qubit order.

        Returns
        -------
        Tuple[str, ...]
            Vertex labels.
        """
        return self.u_vertices + self.v_vertices + self.w_vertices

    @property
    def n_qubits(self) -> int:
        """
        Number of vertices, i.e. qubits.

        Returns
        -------
        int
            Vertex count.
        """
        return len(self.vertices)

    def part_of(self, label: str) -> str:
        """
        Return the set ("U", "V" or "W") a vertex belongs to.

        Parameters
        ----------
        label : str
            Vertex label.

        Returns
        -------
        str
            Set identifier.
        """
        try:
            return self._part_of[label]
        except KeyError as e:
            raise GraphValidationError(f"unknown vertex '{label}'") from e

    def part(self, part: str) -> Tuple[str, ...]:
        """
        Return the labels of one set.

        Parameters
        ----------
        part : str
            Set identifier.

        Returns
        -------
        Tuple[str, ...]
            Vertex labels in document order.
        """
        return {"U": self.u_vertices, "V": self.v_vertices, "W": self.w_vertices}[_check_part(part)]

    def couplings(self) -> List[Tuple[str, str, float]]:
        """
        Effective couplings, one per unordered vertex pair joined by at least one arc.

        The pair is oriented U before V before W, and pairs follow the order in which
        their first arc appears.

        Returns
        -------
        List[Tuple[str, str, float]]
            Triples (a, b, angle) with angle the summed weight of both orientations.
        """
        result = []
        for key, angle in self._couplings.items():
            a, b = sorted(key, key=lambda y: PARTS.index(self._part_of[y]))
            result.append((a, b, angle))
        return result


def _check_part(part: str) -> str:
    if part not in PARTS:
        raise GraphValidationError(f"unknown set '{part}', expected one of {PARTS}")
    return part


def other_parts(part: str) -> Tuple[str, str]:
    """
    Return the two sets different from `part`, in U, V, W order.

    Parameters
    ----------
    part : str
        Set identifier.

    Returns
    -------
    Tuple[str, str]
        The other two set identifiers.
    """
    _check_part(part)
    a, b = (p for p in PARTS if p != part)
    return a, b


def parse_graph(document: Union[str, bytes, dict]) -> GraphSpec:
    """
    Parse and validate a graph document.

    The document is a JSON object with the required keys "U", "V", "W" (arrays of
    vertex labels, possibly empty) and "arcs" (array of {"from", "to", "weight"}
    objects, weights in radians). An optional "init" block is ignored here, see
    `graph_state_tools.statevector.parse_init`.

    Parameters
    ----------
    document : str, bytes or dict
        UTF-8 JSON text or an already decoded object.

    Returns
    -------
    GraphSpec
        The validated graph, vertex order preserved.

    Raises
    ------
    GraphValidationError
        On malformed documents or missing keys, duplicate labels, intra-set arcs,
        unknown endpoints, and non-finite or out-of-range weights.

    Examples
    --------
    >>> g = parse_graph('{"U": ["u0"], "V": ["v0"], "W": ["w0"], "arcs": [{"from": "u0", "to": "v0", "weight": 1.0}]}')
    >>> g.n_qubits, len(g.arcs)
    (3, 1)
    """
    data = _decode(document)
    missing = [key for key in (*PARTS, "arcs") if key not in data]
    if missing:
        raise GraphValidationError(f"missing key(s) {', '.join(repr(key) for key in missing)} in graph document")
    labels = {}
    for part in PARTS:
        value = data[part]
        if not isinstance(value, list):
            raise GraphValidationError(f"'{part}' must be an array of vertex labels")
        labels[part] = value

    raw_arcs = data["arcs"]
    if not isinstance(raw_arcs, list):
        raise GraphValidationError("'arcs' must be an array")
    arcs = []
    for k, raw in enumerate(raw_arcs):
        if not isinstance(raw, dict) or not {"from", "to", "weight"} <= set(raw):
            raise GraphValidationError(f"arc #{k} must be an object with 'from', 'to' and 'weight'")
        for end in ("from", "to"):
            if not isinstance(raw[end], str):
                raise GraphValidationError(f"'{end}' of arc #{k} must be a vertex label, got {raw[end]!r}")
        weight = raw["weight"]
        if isinstance(weight, str):
            # JSON has no NaN literal, accept the usual spellings so they can be rejected below
            try:
                weight = float(weight)
            except ValueError as e:
                raise GraphValidationError(f"weight {raw['weight']!r} of arc #{k} is not a number") from e
        if not isinstance(weight, (int, float)) or isinstance(weight, bool):
            raise GraphValidationError(f"weight {raw['weight']!r} of arc #{k} is not a number")
        try:
            weight = float(weight)
        except OverflowError as e:
            raise GraphValidationError(f"weight of arc #{k} ({raw['from']}->{raw['to']}) is out of range") from e
        arcs.append(Arc(raw["from"], raw["to"], weight))

    g = GraphSpec(tuple(labels["U"]), tuple(labels["V"]), tuple(labels["W"]), tuple(arcs))
    logger.debug("parsed graph with %d vertices and %d arcs", g.n_qubits, len(g.arcs))
    return g


def _decode(document: Union[str, bytes, dict]) -> dict:
    if isinstance(document, dict):
        return document
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise GraphValidationError(f"malformed graph document: {e}") from e
    if not isinstance(data, dict):
        raise GraphValidationError("malformed graph document: top level must be an object")
    return data


def serialize_graph(g: GraphSpec, params=None) -> str:
    """
    Serialize a graph (and optionally its initial parameters) to a JSON document.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    params : InitParams, optional
        Initial Bloch angles written to the "init" block.

    Returns
    -------
    str
        JSON text accepted by `parse_graph`.
    """
    data: dict = {
        "U": list(g.u_vertices),
        "V": list(g.v_vertices),
        "W": list(g.w_vertices),
        "arcs": [{"from": a.source, "to": a.target, "weight": a.weight} for a in g.arcs],
    }
    if params is not None:
        data["init"] = {
            label: {"theta": params[label].theta, "alpha": params[label].alpha} for label in g.vertices
        }
    return json.dumps(data, indent=2)


def load_graph(path: Union[str, Path]):
    """
    Read a graph document and its "init" block from a file.

    Parameters
    ----------
    path : str or Path
        Path to the JSON document.

    Returns
    -------
    Tuple[GraphSpec, InitParams]
        The graph and its initial parameters (missing entries default to zero).
    """
    from graph_state_tools.statevector import parse_init

    text = Path(path).read_text(encoding="utf-8")
    data = _decode(text)
    g = parse_graph(data)
    return g, parse_init(data, g)


def neighbors(g: GraphSpec, x: str, target: str) -> List[str]:
    """
    Return N_target(x), the vertices of `target` joined to `x` by an arc in either orientation.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    x : str
        Vertex label.
    target : str
        Target set, different from the set of `x`.

    Returns
    -------
    List[str]
        Neighbors in document order, without duplicates.

    Raises
    ------
    GraphValidationError
        If `target` is the set of `x`.
    """
    part = g.part_of(x)
    _check_part(target)
    if target == part:
        raise GraphValidationError("same-set neighborhood undefined for tripartite graph")
    return list(g._adjacency[x][target])  # pylint: disable=protected-access


def degree(g: GraphSpec, x: str, target: str) -> int:
    """
    Return |N_target(x)|.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    x : str
        Vertex label.
    target : str
        Target set.

    Returns
    -------
    int
        Degree of `x` toward `target`.
    """
    return len(neighbors(g, x, target))


def degree_table(g: GraphSpec) -> Dict[str, Dict[str, int]]:
    """
    Degrees of every vertex toward each of the two other sets.

    Parameters
    ----------
    g : GraphSpec
        The graph.

    Returns
    -------
    Dict[str, Dict[str, int]]
        Mapping vertex -> {target set -> degree}.
    """
    return {x: {t: degree(g, x, t) for t in other_parts(g.part_of(x))} for x in g.vertices}


def pair_stats(g: GraphSpec, x1: str, x2: str, target: str) -> NeighborhoodStats:
    """
    Neighborhood statistics of a same-set vertex pair toward a target set.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    x1, x2 : str
        Two different vertices of the same set.
    target : str
        One of the two other sets.

    Returns
    -------
    NeighborhoodStats
        Exclusive, common and derived counts.

    Raises
    ------
    GraphValidationError
        If the vertices coincide or belong to different sets.
    """
    if g.part_of(x1) != g.part_of(x2):
        raise GraphValidationError("pair statistics defined for same-set pairs only")
    if x1 == x2:
        raise GraphValidationError(f"pair statistics need two different vertices, got '{x1}' twice")
    n1 = set(neighbors(g, x1, target))
    n2 = set(neighbors(g, x2, target))
    return NeighborhoodStats(len(n1 - n2), len(n2 - n1), len(n1 & n2))


def coupling_angle(g: GraphSpec, a: str, b: str) -> float:
    """
    Effective rotation angle between two vertices of different sets.

    Both orientations share the same generator, so their weights add.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    a, b : str
        Vertices of two different sets.

    Returns
    -------
    float
        Sum of the weights of a->b and b->a, 0.0 when neither exists.
    """
    if g.part_of(a) == g.part_of(b):
        raise GraphValidationError(f"coupling undefined for same-set pair '{a}', '{b}'")
    return g._couplings.get(frozenset((a, b)), 0.0)  # pylint: disable=protected-access


def with_uniform_weight(g: GraphSpec, phi: float) -> GraphSpec:
    """
    Return a copy of the graph with every arc weight set to `phi`.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    phi : float
        New weight in radians.

    Returns
    -------
    GraphSpec
        Graph with the same arcs and uniform weights.
    """
    return GraphSpec(g.u_vertices, g.v_vertices, g.w_vertices, tuple(Arc(a.source, a.target, phi) for a in g.arcs))


def triangle_graph(phi01: float = 0.0, phi12: float = 0.0, phi02: float = 0.0) -> GraphSpec:
    """
    Return the triangle graph with one vertex per set.

    Vertex "0" is in U, "1" in V and "2" in W; arcs are listed 0->1, 1->2, 0->2.

    Parameters
    ----------
    phi01, phi12, phi02 : float
        Weights of the U-V, V-W and U-W arcs.

    Returns
    -------
    GraphSpec
        The triangle.
    """
    return GraphSpec(
        ("0",),
        ("1",),
        ("2",),
        (Arc("0", "1", phi01), Arc("1", "2", phi12), Arc("0", "2", phi02)),
    )


def random_tripartite_graph(
    rng: np.random.Generator,
    max_part_size: int = 3,
    p_arc: float = 0.5,
    weight_range: Tuple[float, float] = (-np.pi, np.pi),
    uniform_weight: Optional[float] = None,
    both_orientations: float = 0.0,
    min_part_size: int = 1,
) -> GraphSpec:
    """
    Draw a random tripartite graph.

    Parameters
    ----------
    rng : np.random.Generator
        Random number generator.
    max_part_size : int, optional
        Maximum number of vertices per set, by default 3.
    p_arc : float, optional
        Probability that a cross-set pair is joined, by default 0.5.
    weight_range : Tuple[float, float], optional
        Uniform weight range, by default (-pi, pi).
    uniform_weight : float, optional
        If given, every arc gets this weight instead.
    both_orientations : float, optional
        Probability that a joined pair also carries the reverse arc, by default 0.
    min_part_size : int, optional
        Minimum number of vertices per set, by default 1.

    Returns
    -------
    GraphSpec
        A random graph with labels u0.., v0.., w0...
    """
    sizes = rng.integers(min_part_size, max_part_size + 1, size=3)
    parts = [tuple(f"{p.lower()}{k}" for k in range(size)) for p, size in zip(PARTS, sizes)]

    def draw_weight() -> float:
        if uniform_weight is not None:
            return float(uniform_weight)
        return float(rng.uniform(*weight_range))

    arcs = []
    for i, j in ((0, 1), (1, 2), (0, 2)):
        for a in parts[i]:
            for b in parts[j]:
                if rng.random() < p_arc:
                    if rng.random() < 0.5:
                        arcs.append(Arc(a, b, draw_weight()))
                    else:
                        arcs.append(Arc(b, a, draw_weight()))
                    if rng.random() < both_orientations:
                        arcs.append(Arc(arcs[-1].target, arcs[-1].source, draw_weight()))
    return GraphSpec(parts[0], parts[1], parts[2], tuple(arcs))


def same_set_pairs(g: GraphSpec) -> Iterable[Tuple[str, str]]:
    """
    Iterate over unordered same-set vertex pairs in qubit order.

    Parameters
    ----------
    g : GraphSpec
        The graph.

    Yields
    ------
    Tuple[str, str]
        Vertex pairs (x1, x2) with x1 listed before x2.
    """
    for part in PARTS:
        labels = g.part(part)
        for k, x1 in enumerate(labels):
            for x2 in labels[k + 1 :]:
                yield x1, x2
