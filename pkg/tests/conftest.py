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
Module provides fixtures shared by the test modules.
"""

from typing import Dict

import pytest

from graph_state_tools.utils import load_project


@pytest.fixture(name="tolerances", scope="session")
def fixture_tolerances() -> Dict[str, float]:
    """
    Absolute tolerances from the [Tolerances] table of the packaged project file.

    "oracle" bounds closed forms against the simulator, "identity" bounds
    exact identities evaluated two ways.

    Returns
    -------
    Dict[str, float]
        The tolerances.
    """
    return {key: float(value) for key, value in load_project()["Tolerances"].items()}
