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
Module provides utility functions that do not fit anywhere else.
"""

import contextlib
import logging
import os
from importlib.resources import files
from pathlib import Path
from typing import Any, Dict, Optional, Union

import joblib
import numpy as np
import toml

logger = logging.getLogger(__name__)

default_project_file_url = files("graph_state_tools.data").joinpath("default.toml")
triangle_graph_url = files("graph_state_tools.data").joinpath("triangle.json")


@contextlib.contextmanager
def tqdm_joblib(tqdm_object):
    """
    Context manager to patch joblib to report into tqdm progress bar given as argument.

    Parameters
    ----------
    tqdm_object : object
      TQDM Object.

    Examples
    --------
    >>> from tqdm.auto import tqdm
    >>> with tqdm_joblib(tqdm(total=4)):
    ...     joblib.Parallel(n_jobs=1)(joblib.delayed(abs)(k) for k in range(4))
    [0, 1, 2, 3]
    """

    class TqdmBatchCompletionCallback(joblib.parallel.BatchCompletionCallBack):
        """
        Batch completion callback advancing the progress bar.
        """

        def __call__(self, *args, **kwargs) -> None:
            tqdm_object.update(n=self.batch_size)
            return super().__call__(*args, **kwargs)

    old_batch_callback = joblib.parallel.BatchCompletionCallBack
    joblib.parallel.BatchCompletionCallBack = TqdmBatchCompletionCallback
    try:
        yield tqdm_object
    finally:
        joblib.parallel.BatchCompletionCallBack = old_batch_callback
        tqdm_object.close()


def load_project(project_file: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Load a project file, the packaged defaults when none is given.

    Parameters
    ----------
    project_file : str or Path, optional
        Path to a toml project file.

    Returns
    -------
    Dict[str, Any]
        The parsed project.
    """
    if project_file is None:
        project_file = default_project_file_url
    with open(project_file, "r", encoding="utf-8") as f:
        project = toml.load(f)
    logger.debug("loaded project file %s", project_file)
    return project


def resolve_n_jobs(n_jobs: Optional[int] = None, project: Optional[Dict[str, Any]] = None) -> int:
    """
    Number of parallel workers, capped by the environment.

    Parameters
    ----------
    n_jobs : int, optional
        Requested workers; the project's [Parallel] n_jobs when None.
    project : Dict[str, Any], optional
        Project configuration, the packaged defaults when None.

    Returns
    -------
    int
        Worker count, at least 1.
    """
    parallel = (project or load_project())["Parallel"]
    if n_jobs is None:
        n_jobs = int(parallel["n_jobs"])
    cap = os.environ.get(parallel.get("env_var", "GRAPHSTATE_THREADS"))
    if cap:
        try:
            n_jobs = min(n_jobs, int(cap))
        except ValueError:
            logger.warning("ignoring non-integer thread cap %r", cap)
    return max(1, n_jobs)


def derive_seed(seed: int, *keys: int) -> int:
    """
    Derive an independent 64-bit seed from a root seed and integer keys.

    Parameters
    ----------
    seed : int
        Root seed.
    *keys : int
        Counters identifying the stream.

    Returns
    -------
    int
        Derived seed in [0, 2**64).

    Examples
    --------
    >>> derive_seed(0, 1) == derive_seed(0, 1)
    True
    """
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1, dtype=np.uint64)[0])
