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
Module provides theta x phi parameter sweeps of entanglement distances.

At every grid point all vertices share the polar angle theta and the fixed azimuthal
angle alpha, and every arc carries the weight phi.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd
import toml
import xarray as xr
from joblib import Parallel, delayed
from tqdm.auto import tqdm

from graph_state_tools.analytic import entanglement_distance_analytic
from graph_state_tools.graphs import GraphSpec, with_uniform_weight
from graph_state_tools.sampling import NoiseConfig, estimate_entanglement_distances
from graph_state_tools.statevector import InitParams, build_graph_state, entanglement_distance_sim
from graph_state_tools.utils import derive_seed, load_project, tqdm_joblib

logger = logging.getLogger(__name__)

MODES: Tuple[str, ...] = ("analytic", "simulated", "sampled", "compare")

CSV_COLUMNS: Tuple[str, ...] = ("theta", "phi", "vertex", "analytic", "estimate", "stderr", "abs_diff")


class SweepSpecError(ValueError):
    """
    Raised for invalid sweep specifications.
    """


@dataclass(frozen=True)
class GridAxis:
    """
    Evenly spaced grid from `start` to `stop` (inclusive) with `steps` points.
    """

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 1:
            raise SweepSpecError(f"grid steps must be an integer >= 1, got {self.steps!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise SweepSpecError(f"grid bounds must be finite, got [{self.start}, {self.stop}]")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GridAxis":
        """
        Build an axis from a {"start", "stop", "steps"} mapping.

        Parameters
        ----------
        data : Mapping[str, Any]
            The mapping.

        Returns
        -------
        GridAxis
            The axis.
        """
        try:
            start, stop, steps = float(data["start"]), float(data["stop"]), data["steps"]
        except (KeyError, TypeError, ValueError) as e:
            raise SweepSpecError(f"invalid grid {data!r}: needs numeric 'start', 'stop' and integer 'steps'") from e
        return cls(start, stop, steps)

    def values(self) -> np.ndarray:
        """
        Return the grid values.

        Returns
        -------
        np.ndarray
            Array of length `steps`.
        """
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """
    Parameter sweep definition.

    Parameters
    ----------
    theta : GridAxis
        Grid of the common polar angle.
    phi : GridAxis
        Grid of the common arc weight.
    alpha : float
        Fixed azimuthal angle.
    vertices : Tuple[str, ...]
        Vertices to report, all when empty.
    mode : str
        One of "analytic", "simulated", "sampled", "compare".
    """

    theta: GridAxis
    phi: GridAxis
    alpha: float = 0.0
    vertices: Tuple[str, ...] = field(default_factory=tuple)
    mode: str = "analytic"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.mode not in MODES:
            raise SweepSpecError(f"unknown sweep mode '{self.mode}', expected one of {MODES}")
        if not math.isfinite(self.alpha):
            raise SweepSpecError(f"alpha must be finite, got {self.alpha}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], defaults: Optional[Mapping[str, Any]] = None) -> "SweepSpec":
        """
        Build a sweep from a mapping with the keys of the [Sweep] project section.

        Parameters
        ----------
        data : Mapping[str, Any]
            Keys theta, phi, alpha, vertices, mode.
        defaults : Mapping[str, Any], optional
            Values for missing keys, by default the packaged [Sweep] section.

        Returns
        -------
        SweepSpec
            The sweep.
        """
        merged = {**(load_project()["Sweep"] if defaults is None else defaults), **data}
        unknown = set(merged) - {"theta", "phi", "alpha", "vertices", "mode"}
        if unknown:
            raise SweepSpecError(f"unknown sweep keys {sorted(unknown)}")
        try:
            alpha = float(merged.get("alpha", 0.0))
        except (TypeError, ValueError) as e:
            raise SweepSpecError(f"alpha must be a number, got {merged.get('alpha')!r}") from e
        return cls(
            theta=GridAxis.from_dict(merged["theta"]),
            phi=GridAxis.from_dict(merged["phi"]),
            alpha=alpha,
            vertices=tuple(merged.get("vertices", ())),
            mode=merged.get("mode", "analytic"),
        )

    @classmethod
    def default(cls, project: Optional[Dict[str, Any]] = None) -> "SweepSpec":
        """
        The sweep of the project's [Sweep] section (17 x 17 over [0, pi]^2).

        Parameters
        ----------
        project : Dict[str, Any], optional
            Project configuration, the packaged defaults when None.

        Returns
        -------
        SweepSpec
            The sweep.
        """
        section = (project or load_project())["Sweep"]
        return cls.from_dict(section, defaults=section)


def load_sweep_spec(path: Union[str, Path], project: Optional[Dict[str, Any]] = None) -> SweepSpec:
    """
    Read a toml sweep specification.

    The file holds the keys of the [Sweep] project section, either at top level or under
    a [Sweep] table; missing keys take the project values.

    Parameters
    ----------
    path : str or Path
        Path to the toml file.
    project : Dict[str, Any], optional
        Project configuration, the packaged defaults when None.

    Returns
    -------
    SweepSpec
        The sweep.
    """
    try:
        data = toml.load(path)
    except toml.TomlDecodeError as e:
        raise SweepSpecError(f"malformed sweep file {path}: {e}") from e
    data = data.get("Sweep", data)
    return SweepSpec.from_dict(data, defaults=(project or load_project())["Sweep"])


def evaluate_point(
    g: GraphSpec,
    theta: float,
    phi: float,
    alpha: float,
    vertices: List[str],
    mode: str,
    noise: Optional[NoiseConfig] = None,
) -> Dict[str, np.ndarray]:
    """
    Entanglement distances of the requested vertices at one grid point.

    Parameters
    ----------
    g : GraphSpec
        Graph whose arc weights are replaced by `phi`.
    theta : float
        Common polar angle.
    phi : float
        Common arc weight.
    alpha : float
        Common azimuthal angle.
    vertices : List[str]
        Vertices to evaluate.
    mode : str
        Sweep mode.
    noise : NoiseConfig, optional
        Sampling configuration, required for "sampled" and "compare".

    Returns
    -------
    Dict[str, np.ndarray]
        Arrays over `vertices`: analytic, estimate, stderr and, in compare mode, simulated.
    """
    g_phi = with_uniform_weight(g, phi)
    params = InitParams.uniform(g_phi, theta, alpha)
    n = len(vertices)
    result = {
        "analytic": np.array([entanglement_distance_analytic(g_phi, params, x) for x in vertices]),
        "estimate": np.full(n, np.nan),
        "stderr": np.full(n, np.nan),
    }
    if mode in ("simulated", "compare"):
        state = build_graph_state(g_phi, params)
        simulated = np.array([entanglement_distance_sim(state, g_phi.index_map[x]) for x in vertices])
        if mode == "simulated":
            result["estimate"] = simulated
            result["stderr"] = np.zeros(n)
        else:
            result["simulated"] = simulated
    if mode in ("sampled", "compare"):
        if noise is None:
            raise SweepSpecError(f"mode '{mode}' needs a noise configuration")
        estimates = estimate_entanglement_distances(g_phi, params, noise, vertices)
        result["estimate"] = np.array([estimates[x][0] for x in vertices])
        result["stderr"] = np.array([estimates[x][1] for x in vertices])
    return result


def run_sweep(
    g: GraphSpec,
    spec: SweepSpec,
    noise: Optional[NoiseConfig] = None,
    n_jobs: int = 1,
    progress: bool = False,
) -> xr.Dataset:
    """
    Run a theta x phi sweep.

    Grid points run as independent joblib tasks; the point (i, j) samples with seed
    `derive_seed(noise.seed, i, j)`, so results do not depend on `n_jobs`.

    Parameters
    ----------
    g : GraphSpec
        The graph.
    spec : SweepSpec
        Grid, alpha, vertices and mode.
    noise : NoiseConfig, optional
        Sampling configuration for "sampled" and "compare" modes.
    n_jobs : int, optional
        Number of parallel jobs, by default 1.
    progress : bool, optional
        Show a tqdm progress bar, by default False.

    Returns
    -------
    xr.Dataset
        Variables analytic, estimate, stderr, abs_diff (and simulated in compare mode)
        over dimensions (theta, phi, vertex).
    """
    vertices = list(spec.vertices) or list(g.vertices)
    for x in vertices:
        g.part_of(x)
    thetas = spec.theta.values()
    phis = spec.phi.values()
    if spec.mode in ("sampled", "compare") and noise is None:
        raise SweepSpecError(f"mode '{spec.mode}' needs a noise configuration")

    def point_noise(i: int, j: int) -> Optional[NoiseConfig]:
        if noise is None:
            return None
        return NoiseConfig.from_dict({"seed": derive_seed(noise.seed, i, j)}, defaults=noise)

    tasks = [
        delayed(evaluate_point)(g, theta, phi, spec.alpha, vertices, spec.mode, point_noise(i, j))
        for i, theta in enumerate(thetas)
        for j, phi in enumerate(phis)
    ]
    logger.info("sweeping %d grid points in %s mode", len(tasks), spec.mode)
    if progress:
        with tqdm_joblib(tqdm(desc="Sweeping grid", total=len(tasks), leave=True, position=0)):
            results = Parallel(n_jobs=n_jobs)(tasks)
    else:
        results = Parallel(n_jobs=n_jobs)(tasks)

    shape = (len(thetas), len(phis), len(vertices))
    names = list(results[0]) if results else ["analytic", "estimate", "stderr"]
    data_vars = {
        name: (("theta", "phi", "vertex"), np.stack([r[name] for r in results]).reshape(shape)) for name in names
    }
    ds = xr.Dataset(
        data_vars,
        coords={"theta": thetas, "phi": phis, "vertex": vertices},
        attrs={"alpha": spec.alpha, "mode": spec.mode},
    )
    ds["abs_diff"] = np.abs(ds["analytic"] - ds["estimate"])
    return ds


@xr.register_dataset_accessor("edist")
class EntanglementSweepMethods:
    """
    Entanglement-distance sweep methods for xarray Dataset.

    This class is used to add custom methods to xarray Dataset objects. The methods can be accessed via the 'edist' attribute.

    Parameters
    ----------
    xarray_obj : xr.Dataset
      The xarray Dataset to which to add the custom methods.
    """

    def __init__(self, xarray_obj: xr.Dataset):
        self._obj = xarray_obj

    def init(self):
        """
        Do-nothing method.

        This method is needed to work with joblib Parallel.
        """

    def __repr__(self):
        return """
Entanglement-distance sweep methods for xarray Dataset.

Available methods:

- to_dataframe: rows in theta, phi, vertex order
- to_csv: write the plot-feed CSV
- max_abs_diff: largest analytic/estimate deviation
"""

    def to_dataframe(self) -> pd.DataFrame:
        """
        Flatten the sweep into one row per (theta, phi, vertex), theta varying slowest.

        Returns
        -------
        pd.DataFrame
            Columns theta, phi, vertex, analytic, estimate, stderr, abs_diff.
        """
        ds = self._obj[["analytic", "estimate", "stderr", "abs_diff"]].transpose("theta", "phi", "vertex")
        df = ds.to_dataframe().reset_index()
        return df[list(CSV_COLUMNS)]

    def to_csv(self, path: Optional[Union[str, Path]] = None) -> str:
        """
        Write the sweep as CSV with header theta,phi,vertex,analytic,estimate,stderr,abs_diff.

        Missing estimates are written as "nan".

        Parameters
        ----------
        path : str or Path, optional
            Output file; only the text is returned when None.

        Returns
        -------
        str
            The CSV text.
        """
        text = self.to_dataframe().to_csv(index=False, na_rep="nan", lineterminator="\n")
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    def max_abs_diff(self, vertex: Optional[str] = None) -> float:
        """
        Largest |analytic - estimate| over the grid.

        Parameters
        ----------
        vertex : str, optional
            Restrict to one vertex.

        Returns
        -------
        float
            The maximum, NaN when no estimate exists.
        """
        da = self._obj["abs_diff"]
        if vertex is not None:
            da = da.sel(vertex=vertex)
        if bool(da.isnull().all()):
            return float("nan")
        return float(da.max())
