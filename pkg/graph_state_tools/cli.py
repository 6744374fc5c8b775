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
Command-line front end: graph structure, entanglement distances, sweeps, correlators and
circuit compilation.

Exit status is 0 on success, 1 on validation errors and 2 on I/O errors.
"""

import json
import logging
import sys
import time
from argparse import ArgumentDefaultsHelpFormatter, ArgumentParser, Namespace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from graph_state_tools.analytic import correlator_analytic, entanglement_distance_analytic
from graph_state_tools.circuits import compile_state_prep, emit_circuit_text, with_measurement
from graph_state_tools.graphs import degree_table, load_graph, other_parts, pair_stats, same_set_pairs
from graph_state_tools.sampling import (
    NoiseConfig,
    estimate_entanglement_distances,
    load_noise_config,
    noise_preset,
)
from graph_state_tools.statevector import (
    PauliString,
    build_graph_state,
    entanglement_distance_sim,
    expect_pauli,
)
from graph_state_tools.sweeps import MODES, SweepSpec, load_sweep_spec, run_sweep
from graph_state_tools.utils import default_project_file_url, load_project, resolve_n_jobs

logger = logging.getLogger("graph_state_tools")

AXIS_PAIRS = ("xx", "yy", "zz", "yz", "zx", "xy")


def _write(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n", encoding="utf-8")
        logger.info("wrote %s", out)


def _resolve_noise(options: Namespace, project: Dict[str, Any]) -> NoiseConfig:
    """
    Noise from --noise-file, else --noise_preset, else the noiseless preset; --seed and
    --shots override.
    """
    if options.noise_file is not None:
        noise = load_noise_config(options.noise_file, project)
    else:
        if options.noise_preset is None:
            logger.info("no noise file given, sampling noiselessly")
        noise = noise_preset(options.noise_preset or "noiseless", project)
    overrides = {}
    if options.seed is not None:
        overrides["seed"] = options.seed
    if options.shots is not None:
        overrides["shots"] = options.shots
    return NoiseConfig.from_dict(overrides, defaults=noise)


def cmd_structure(options: Namespace, project: Dict[str, Any]) -> int:
    """
    Report degrees and same-set pair statistics as JSON.
    """
    g, _ = load_graph(options.graph)
    pairs = []
    for x1, x2 in same_set_pairs(g):
        part = g.part_of(x1)
        pairs.append(
            {
                "x1": x1,
                "x2": x2,
                "set": part,
                "stats": {target: pair_stats(g, x1, x2, target).to_dict() for target in other_parts(part)},
            }
        )
    report = {
        "n_qubits": g.n_qubits,
        "index_map": g.index_map.to_dict(),
        "degrees": degree_table(g),
        "pairs": pairs,
    }
    _write(json.dumps(report, indent=2), options.out)
    return 0


def cmd_edist(options: Namespace, project: Dict[str, Any]) -> int:
    """
    Report entanglement distances of one or all vertices as JSON.
    """
    g, params = load_graph(options.graph)
    vertices: List[str] = [options.vertex] if options.vertex else list(g.vertices)
    for x in vertices:
        g.part_of(x)
    mode = options.mode
    values: Dict[str, Dict[str, float]] = {x: {} for x in vertices}

    if mode in ("analytic", "compare"):
        for x in vertices:
            values[x]["analytic"] = entanglement_distance_analytic(g, params, x)
    if mode in ("simulated", "compare"):
        state = build_graph_state(g, params)
        for x in vertices:
            values[x]["simulated"] = entanglement_distance_sim(state, g.index_map[x])
    noise = None
    if mode in ("sampled", "compare"):
        noise = _resolve_noise(options, project)
        estimates = estimate_entanglement_distances(
            g, params, noise, vertices, fuse=options.fuse, n_jobs=resolve_n_jobs(options.n_jobs, project)
        )
        for x in vertices:
            values[x]["sampled"], values[x]["stderr"] = estimates[x]
    if mode == "compare":
        for x in vertices:
            values[x]["abs_diff_simulated"] = abs(values[x]["analytic"] - values[x]["simulated"])
            values[x]["abs_diff_sampled"] = abs(values[x]["analytic"] - values[x]["sampled"])

    report: Dict[str, Any] = {"mode": mode, "vertices": values}
    if noise is not None:
        report["noise"] = noise.to_dict()
    _write(json.dumps(report, indent=2), options.out)
    return 0


def cmd_sweep(options: Namespace, project: Dict[str, Any]) -> int:
    """
    Run a theta x phi sweep and write the CSV.
    """
    start = time.time()
    g, _ = load_graph(options.graph)
    spec = load_sweep_spec(options.sweep_file, project) if options.sweep_file else SweepSpec.default(project)
    if options.mode is not None:
        spec = SweepSpec(spec.theta, spec.phi, spec.alpha, spec.vertices, options.mode)
    if options.vertex:
        spec = SweepSpec(spec.theta, spec.phi, spec.alpha, (options.vertex,), spec.mode)
    noise = _resolve_noise(options, project) if spec.mode in ("sampled", "compare") else None
    ds = run_sweep(
        g,
        spec,
        noise=noise,
        n_jobs=resolve_n_jobs(options.n_jobs, project),
        progress=options.out is not None,
    )
    text = ds.edist.to_csv()
    if options.out is None:
        sys.stdout.write(text)
    else:
        Path(options.out).write_text(text, encoding="utf-8")
        logger.info("wrote %s", options.out)
    time_elapsed = time.time() - start
    logger.info("Time elapsed %.0fs", time_elapsed)
    return 0


def cmd_correlators(options: Namespace, project: Dict[str, Any]) -> int:
    """
    Report analytic (where covered) and simulated two-point correlators as JSON.
    """
    g, params = load_graph(options.graph)
    x1, x2 = options.x1, options.x2
    q1, q2 = g.index_map[x1], g.index_map[x2]
    if q1 == q2:
        raise ValueError(f"correlator needs two different vertices, got '{x1}' twice")
    state = build_graph_state(g, params)
    results = []
    for axes in options.axes:
        a1, a2 = axes[0].upper(), axes[1].upper()
        entry: Dict[str, Any] = {
            "axes": axes,
            "simulated": expect_pauli(state, PauliString(((q1, a1), (q2, a2)))),
            "analytic": None,
            "abs_diff": None,
        }
        try:
            if g.part_of(x1) != g.part_of(x2):
                raise NotImplementedError("cross-set pair")
            entry["analytic"] = correlator_analytic(g, params, x1, x2, a1, a2)
            entry["abs_diff"] = abs(entry["analytic"] - entry["simulated"])
        except NotImplementedError as e:
            entry["notice"] = f"simulator-only: {e}"
            logger.info("%s%s on %s, %s is simulator-only", a1, a2, x1, x2)
        results.append(entry)
    _write(json.dumps({"x1": x1, "x2": x2, "correlators": results}, indent=2), options.out)
    return 0


def cmd_compile(options: Namespace, project: Dict[str, Any]) -> int:
    """
    Write the preparation circuit text.
    """
    g, params = load_graph(options.graph)
    circuit = compile_state_prep(g, params, fuse=options.fuse)
    if options.measure is not None:
        circuit = with_measurement(circuit, options.measure)
    _write(emit_circuit_text(circuit), options.out)
    return 0


def _add_sampling_arguments(parser: ArgumentParser):
    parser.add_argument("--noise-file", dest="noise_file", help="""JSON noise configuration.""", default=None)
    parser.add_argument(
        "--noise_preset",
        help="""Named noise levels from the project file, used when no noise file is given.""",
        default=None,
    )
    parser.add_argument("--seed", help="""Root seed, overrides the noise file.""", type=int, default=None)
    parser.add_argument("--shots", help="""Shots per measurement setting.""", type=int, default=None)
    parser.add_argument("--fuse", help="""Cancel inverse basis changes.""", action="store_true", default=False)
    parser.add_argument("--n_jobs", help="""Number of parallel jobs.""", type=int, default=None)


def build_parser() -> ArgumentParser:
    """
    Build the argument parser.

    Returns
    -------
    ArgumentParser
        Parser with one subcommand per operation.
    """
    parser = ArgumentParser(prog="graph-state-tools", formatter_class=ArgumentDefaultsHelpFormatter)
    parser.description = "Entanglement of tripartite graph states: closed forms, simulation and noisy sampling."
    parser.add_argument(
        "--project_file",
        help=f"Project file in toml. Default={default_project_file_url}",
        default=None,
    )
    parser.add_argument("--verbose", help="""Log debug messages.""", action="store_true", default=False)
    subparsers = parser.add_subparsers(dest="command", required=True)

    structure = subparsers.add_parser(
        "structure", help="degrees and pair statistics", formatter_class=ArgumentDefaultsHelpFormatter
    )
    structure.add_argument("graph", help="""Graph document (JSON).""")
    structure.add_argument("--out", help="""Output file, standard output if omitted.""", default=None)
    structure.set_defaults(func=cmd_structure)

    edist = subparsers.add_parser("edist", help="entanglement distances", formatter_class=ArgumentDefaultsHelpFormatter)
    edist.add_argument("graph", help="""Graph document (JSON).""")
    edist.add_argument("--vertex", help="""Vertex label, all vertices if omitted.""", default=None)
    edist.add_argument("--mode", choices=MODES, default="analytic")
    edist.add_argument("--out", help="""Output file, standard output if omitted.""", default=None)
    _add_sampling_arguments(edist)
    edist.set_defaults(func=cmd_edist)

    sweep = subparsers.add_parser("sweep", help="theta x phi sweep", formatter_class=ArgumentDefaultsHelpFormatter)
    sweep.add_argument("graph", help="""Graph document (JSON).""")
    sweep.add_argument(
        "sweep_file", nargs="?", help="""Sweep specification (toml), project [Sweep] if omitted.""", default=None
    )
    sweep.add_argument("--mode", choices=MODES, help="""Overrides the sweep file mode.""", default=None)
    sweep.add_argument("--vertex", help="""Vertex label, overrides the sweep file vertices.""", default=None)
    sweep.add_argument("--out", help="""Output CSV, standard output if omitted.""", default=None)
    _add_sampling_arguments(sweep)
    sweep.set_defaults(func=cmd_sweep)

    correlators = subparsers.add_parser(
        "correlators", help="two-point correlators", formatter_class=ArgumentDefaultsHelpFormatter
    )
    correlators.add_argument("graph", help="""Graph document (JSON).""")
    correlators.add_argument("x1", help="""First vertex.""")
    correlators.add_argument("x2", help="""Second vertex.""")
    correlators.add_argument("--axes", nargs="+", choices=AXIS_PAIRS, default=["zz"])
    correlators.add_argument("--out", help="""Output file, standard output if omitted.""", default=None)
    correlators.set_defaults(func=cmd_correlators)

    compile_parser = subparsers.add_parser(
        "compile", help="compile the preparation circuit", formatter_class=ArgumentDefaultsHelpFormatter
    )
    compile_parser.add_argument("graph", help="""Graph document (JSON).""")
    compile_parser.add_argument("--out", help="""Output file, standard output if omitted.""", default=None)
    compile_parser.add_argument("--fuse", help="""Cancel inverse basis changes.""", action="store_true", default=False)
    compile_parser.add_argument(
        "--measure", choices=("X", "Y", "Z"), help="""Append readout of every qubit in this basis.""", default=None
    )
    compile_parser.set_defaults(func=cmd_compile)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    Parameters
    ----------
    argv : Sequence[str], optional
        Arguments, by default sys.argv[1:].

    Returns
    -------
    int
        Exit status.
    """
    options = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if options.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        project = load_project(options.project_file)
        return options.func(options, project)
    except ValueError as e:
        logger.error("%s", e)
        return 1
    except OSError as e:
        logger.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
