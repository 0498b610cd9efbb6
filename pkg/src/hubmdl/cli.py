"""Command-line harness: classify hubs on edge lists and run the synthetic
experiment sweeps, emitting machine-readable tables.

Verbs: hubs (four methods on a parsed edge list), synth (degree-distribution
sweep), price (growth-model hub curves), transition (growth-model hub
transition grid), verify (oracle and invariant suite). Data goes to stdout
or --out; progress and timing go to stderr. Output is byte-identical for
identical (command, arguments, seed).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .baselines import average_hubs, loubar_hubs
from .codelength import DegreeSequence, EncodingKind, FeasibilityError
from .graphio import ParseError, ParseOptions, degree_sequence, parse_edge_list
from .hubfinder import GraphFamily, HubResult, identify_hubs, select_encoding
from .synth import (
    DegreeDistribution,
    PriceParams,
    derive_seed,
    price_simulate,
    sample_degrees,
    trace_hub_counts,
)
from . import verification

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_VERIFY_FAILED = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad flags; the contract reserves 2 for verify."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Table output

def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def _json_cell(value):
    if isinstance(value, float):
        return float(format(value, ".9g"))
    return value


def write_table(
    stream,
    fmt: str,
    command: str,
    seed: int,
    columns: Sequence[str],
    rows: Iterable[Dict],
) -> None:
    """Emit rows with the reproducibility header (tool version, command, seed)."""
    rows = list(rows)
    if fmt == "csv":
        stream.write(f"# tool: hubmdl {__version__}\n")
        stream.write(f"# command: {command}\n")
        stream.write(f"# seed: {seed}\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(row.get(c)) for c in columns])
    else:
        doc = {
            "tool": "hubmdl",
            "version": __version__,
            "command": command,
            "seed": seed,
            "columns": list(columns),
            "rows": [{c: _json_cell(r.get(c)) for c in columns} for r in rows],
        }
        json.dump(doc, stream, indent=2)
        stream.write("\n")


def _emit(ns, command: str, seed: int, columns, rows) -> None:
    if ns.out in (None, "-", "stdout"):
        write_table(sys.stdout, ns.format, command, seed, columns, rows)
    else:
        with open(ns.out, "w", newline="") as fh:
            write_table(fh, ns.format, command, seed, columns, rows)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _mean_2se(values: np.ndarray) -> Tuple[float, float]:
    values = np.asarray(values, dtype=np.float64)
    mean = float(values.mean())
    if values.size < 2:
        return mean, 0.0
    se = float(values.std(ddof=1) / math.sqrt(values.size))
    return mean, 2.0 * se


# ---------------------------------------------------------------------------
# hubs

def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as fh:
        return fh.read()


HUBS_COLUMNS = [
    "method", "encoding", "direction", "family", "n_nodes", "m_edges",
    "h_star", "h_star_over_n", "threshold_degree", "l_star_bits",
    "l0_er_bits", "l0_cm_bits", "eta", "selected",
]


def _hub_row(method, enc, res: HubResult, deg: DegreeSequence, ns, family, selected):
    return {
        "method": method,
        "encoding": enc.value if enc else None,
        "direction": ns.direction,
        "family": family.value,
        "n_nodes": deg.n_nodes,
        "m_edges": deg.total,
        "h_star": res.h_star,
        "h_star_over_n": res.h_star / deg.n_nodes,
        "threshold_degree": res.threshold_degree,
        "l_star_bits": res.l_star,
        "l0_er_bits": res.l0_er,
        "l0_cm_bits": res.l0_cm,
        "eta": res.eta,
        "selected": selected,
    }


def cmd_hubs(ns, command: str) -> int:
    text = _read_input(ns.input)
    opts = ParseOptions(
        delimiter=ns.delimiter,
        weighted=ns.weighted,
        binarize=ns.binarize,
        allow_self_loops=not ns.no_self_loops,
        n_nodes_override=ns.n_nodes,
    )
    graph = parse_edge_list(text, opts)
    deg = degree_sequence(graph, ns.direction)

    if ns.encoding != "auto":
        enc = EncodingKind.from_name(ns.encoding)
        family = GraphFamily.of(enc)
        if ns.family != "auto" and GraphFamily.from_name(ns.family) is not family:
            raise ValueError(
                f"--encoding {ns.encoding} belongs to the {family.value} family, "
                f"which contradicts --family {ns.family}"
            )
    else:
        family = (
            GraphFamily.from_name(ns.family) if ns.family != "auto" else graph.family
        )

    t0 = time.perf_counter()
    er_res = identify_hubs(deg, family.er)
    cm_res = identify_hubs(deg, family.cm)
    if ns.encoding != "auto":
        chosen = EncodingKind.from_name(ns.encoding)
    else:
        chosen, _ = select_encoding(deg, family)

    avg = average_hubs(deg)
    lou = loubar_hubs(deg)
    degrees = deg.degrees

    rows = [
        _hub_row("er", family.er, er_res, deg, ns, family, chosen is family.er),
        _hub_row("cm", family.cm, cm_res, deg, ns, family, chosen is family.cm),
    ]
    for method, base in (("average", avg), ("loubar", lou)):
        hub_list = sorted(base.hub_ids)
        rows.append({
            "method": method,
            "encoding": None,
            "direction": ns.direction,
            "family": family.value,
            "n_nodes": deg.n_nodes,
            "m_edges": deg.total,
            "h_star": base.h,
            "h_star_over_n": base.h / deg.n_nodes,
            "threshold_degree": int(degrees[hub_list].min()) if hub_list else None,
            "l_star_bits": None,
            "l0_er_bits": er_res.l0_er,
            "l0_cm_bits": er_res.l0_cm,
            "eta": None,
            "selected": None,
        })
    elapsed = (time.perf_counter() - t0) * 1e3
    _progress(f"hubs: {graph.n_nodes} nodes, {deg.total} edge weight, "
              f"4 methods in {elapsed:.1f} ms")
    _emit(ns, command, ns.seed, HUBS_COLUMNS, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth

SYNTH_COLUMNS = [
    "distribution", "mean", "n", "trials", "method", "encoding",
    "h_star_mean", "h_star_2se", "h_star_over_n_mean", "h_star_over_n_2se",
    "eta_mean", "eta_2se", "selected_frac",
]


def _synth_trial(task) -> Tuple[int, int, int, int, float, float, bool]:
    """One (cell, trial) draw: h* for all four methods plus eta and selection."""
    family, mean, n, seed, cell, trial = task
    deg = sample_degrees(
        DegreeDistribution(family, mean), n, derive_seed(seed, cell, trial)
    )
    er = identify_hubs(deg, EncodingKind.ERM)
    cm = identify_hubs(deg, EncodingKind.CMM)
    h_avg = average_hubs(deg).h
    h_lou = loubar_hubs(deg).h
    er_selected = not (cm.l_star < er.l_star - 1e-9)
    return (er.h_star, cm.h_star, h_avg, h_lou, er.eta, cm.eta, er_selected)


def _run_tasks(tasks, worker, workers: int):
    if workers <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def cmd_synth(ns, command: str) -> int:
    means = [float(x) for x in ns.means.split(",") if x]
    sizes = [int(x) for x in ns.sizes.split(",") if x]
    if not means or not sizes:
        raise ValueError("empty --means or --sizes grid")
    if ns.family == "zipf":
        # warm the inverse-CDF cache in the parent so forked workers share it
        for mean in means:
            sample_degrees(DegreeDistribution("zipf", mean), 1, 0)
    rows = []
    cells = [(mean, n) for mean in means for n in sizes]
    for cell_idx, (mean, n) in enumerate(cells):
        t0 = time.perf_counter()
        tasks = [
            (ns.family, mean, n, ns.seed, cell_idx, trial)
            for trial in range(ns.trials)
        ]
        results = _run_tasks(tasks, _synth_trial, ns.workers)
        arr = np.array(results, dtype=np.float64)
        h_er, h_cm, h_avg, h_lou = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]
        eta_er, eta_cm, er_sel = arr[:, 4], arr[:, 5], arr[:, 6]
        per_method = [
            ("er", EncodingKind.ERM.value, h_er, eta_er, float(er_sel.mean())),
            ("cm", EncodingKind.CMM.value, h_cm, eta_cm, float(1.0 - er_sel.mean())),
            ("average", None, h_avg, None, None),
            ("loubar", None, h_lou, None, None),
        ]
        for method, enc_name, h_vals, eta_vals, sel_frac in per_method:
            h_mean, h_2se = _mean_2se(h_vals)
            f_mean, f_2se = _mean_2se(h_vals / n)
            row = {
                "distribution": ns.family, "mean": mean, "n": n,
                "trials": ns.trials, "method": method, "encoding": enc_name,
                "h_star_mean": h_mean, "h_star_2se": h_2se,
                "h_star_over_n_mean": f_mean, "h_star_over_n_2se": f_2se,
                "eta_mean": None, "eta_2se": None, "selected_frac": sel_frac,
            }
            if eta_vals is not None:
                row["eta_mean"], row["eta_2se"] = _mean_2se(eta_vals)
            rows.append(row)
        _progress(
            f"synth: {ns.family} mean={mean:g} n={n} "
            f"({ns.trials} trials in {time.perf_counter() - t0:.2f} s)"
        )
    _emit(ns, command, ns.seed, SYNTH_COLUMNS, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# price

PRICE_COLUMNS = [
    "m", "alpha", "trials", "t", "method", "encoding",
    "h_star_mean", "h_star_2se",
]


def _price_trial(task):
    """One growth simulation, returning per-step hub counts per method."""
    m, alpha, t_max, enc_values, seed, cell, trial = task
    params = PriceParams(m=m, alpha=alpha, t_max=t_max, trials=1, seed=0)
    trace = price_simulate(params, seed=derive_seed(seed, cell, trial))
    encs = [EncodingKind.from_name(v) for v in enc_values]
    return trace_hub_counts(trace, encs)


def _price_curves(ns, m, alpha, enc_values, cell_idx):
    tasks = [
        (m, alpha, ns.t_max, tuple(enc_values), ns.seed, cell_idx, trial)
        for trial in range(ns.trials)
    ]
    results = _run_tasks(tasks, _price_trial, ns.workers)
    keys = list(results[0].keys())
    return {k: np.stack([r[k] for r in results]) for k in keys}


def cmd_price(ns, command: str) -> int:
    enc_values = [e.strip().lower() for e in ns.encodings.split(",") if e.strip()]
    for v in enc_values:
        enc = EncodingKind.from_name(v)
        if enc.is_simple:
            _progress(
                f"note: {v} is a simple-graph encoding; growth traces are "
                "simple-feasible so this is valid"
            )
    t0 = time.perf_counter()
    curves = _price_curves(ns, ns.m, ns.alpha, enc_values, cell_idx=0)
    method_order = [(v, v) for v in enc_values] + [("average", None), ("loubar", None)]
    rows = []
    for t in range(1, ns.t_max + 1):
        for method, enc_name in method_order:
            vals = curves[method][:, t - 1]
            h_mean, h_2se = _mean_2se(vals)
            rows.append({
                "m": ns.m, "alpha": ns.alpha, "trials": ns.trials, "t": t,
                "method": "er" if method.startswith("er") else
                          "cm" if method.startswith("cm") else method,
                "encoding": enc_name,
                "h_star_mean": h_mean, "h_star_2se": h_2se,
            })
    _progress(
        f"price: m={ns.m} alpha={ns.alpha:g} T={ns.t_max} "
        f"({ns.trials} trials in {time.perf_counter() - t0:.2f} s)"
    )
    _emit(ns, command, ns.seed, PRICE_COLUMNS, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# transition

TRANSITION_COLUMNS = [
    "encoding", "m", "alpha", "t_max", "trials", "t_star", "transition",
]


def cmd_transition(ns, command: str) -> int:
    enc = EncodingKind.from_name(ns.encoding)
    m_grid = [int(x) for x in ns.m_grid.split(",") if x]
    alpha_grid = [float(x) for x in ns.alpha_grid.split(",") if x]
    if not m_grid or not alpha_grid:
        raise ValueError("empty --m-grid or --alpha-grid")
    rows = []
    cells = [(m, a) for m in m_grid for a in alpha_grid]
    for cell_idx, (m, alpha) in enumerate(cells):
        t0 = time.perf_counter()
        tasks = [
            (m, alpha, ns.t_max, (enc.value,), ns.seed, cell_idx, trial)
            for trial in range(ns.trials)
        ]
        results = _run_tasks(tasks, _price_trial, ns.workers)
        mean_curve = np.stack([r[enc.value] for r in results]).mean(axis=0)
        reached = np.flatnonzero(mean_curve >= 1.0)
        t_star = int(reached[0]) + 1 if reached.size else None
        rows.append({
            "encoding": enc.value, "m": m, "alpha": alpha, "t_max": ns.t_max,
            "trials": ns.trials, "t_star": t_star,
            "transition": t_star is not None,
        })
        _progress(
            f"transition: m={m} alpha={alpha:g} -> "
            f"{'t*=' + str(t_star) if t_star else 'none'} "
            f"({time.perf_counter() - t0:.2f} s)"
        )
    _emit(ns, command, ns.seed, TRANSITION_COLUMNS, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def cmd_verify(ns, command: str) -> int:
    print(f"hubmdl {__version__} verify")
    print(f"command: {command}")
    print(f"seed: {ns.seed}")
    print(f"trials: {ns.trials}")
    report = verification.run_all(trials=ns.trials, seed=ns.seed)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: {check.detail}")
    passed = sum(c.passed for c in report.checks)
    print(f"{passed}/{len(report.checks)} checks passed")
    if not report.all_passed:
        failure = report.first_failure
        print(f"first failure: {failure.name} (reproduce with --seed {ns.seed})")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> _Parser:
    parser = _Parser(prog="hubmdl", description=__doc__)
    parser.add_argument("--version", action="version", version=f"hubmdl {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base RNG seed (u64)")
    common.add_argument("--format", choices=("csv", "structured"), default="csv")
    common.add_argument("--out", default="-", help="output path, or - for stdout")
    common.add_argument(
        "--workers", type=int, default=os.cpu_count() or 1,
        help="parallel workers for trials (output is identical for any count)",
    )

    p_hubs = sub.add_parser(
        "hubs", parents=[common],
        help="classify hubs in an edge list with all four methods",
    )
    p_hubs.add_argument("input", help="edge-list path, or - for stdin")
    p_hubs.add_argument("--direction", choices=("in", "out"), default="in")
    p_hubs.add_argument(
        "--family", choices=("simple", "multigraph", "auto"), default="auto"
    )
    p_hubs.add_argument(
        "--encoding", choices=("ers", "cms", "erm", "cmm", "auto"), default="auto",
        help="pin the reported encoding; auto runs model selection",
    )
    p_hubs.add_argument(
        "--delimiter", choices=("auto", "whitespace", "comma", "tab"), default="auto"
    )
    p_hubs.add_argument("--weighted", action="store_true",
                        help="read the third column as integer multiplicities")
    p_hubs.add_argument("--binarize", action="store_true",
                        help="drop weights, self-loops, duplicates (simple graph)")
    p_hubs.add_argument("--no-self-loops", action="store_true",
                        help="reject self-loops instead of keeping them")
    p_hubs.add_argument("--n-nodes", type=int, default=None,
                        help="declare isolated nodes beyond the observed labels")
    p_hubs.set_defaults(func=cmd_hubs)

    p_synth = sub.add_parser(
        "synth", parents=[common],
        help="hub statistics for sampled degree sequences over a (mean, N) grid",
    )
    p_synth.add_argument("--family", choices=("poisson", "geometric", "zipf"),
                         required=True)
    p_synth.add_argument("--means", required=True,
                         help="comma-separated mean degrees, e.g. 10,100")
    p_synth.add_argument("--sizes", required=True,
                         help="comma-separated node counts, e.g. 1000")
    p_synth.add_argument("--trials", type=int, default=50)
    p_synth.set_defaults(func=cmd_synth)

    p_price = sub.add_parser(
        "price", parents=[common],
        help="mean hub-count curves for the growth model",
    )
    p_price.add_argument("--m", type=int, required=True)
    p_price.add_argument("--alpha", type=float, required=True)
    p_price.add_argument("--t-max", type=int, default=100)
    p_price.add_argument("--trials", type=int, default=50)
    p_price.add_argument("--encodings", default="erm,cmm",
                         help="comma-separated MDL encodings to track")
    p_price.set_defaults(func=cmd_price)

    p_trans = sub.add_parser(
        "transition", parents=[common],
        help="first timestep with trial-mean h* >= 1 over an (m, alpha) grid",
    )
    p_trans.add_argument("--m-grid", required=True, help="e.g. 1,4,10,18")
    p_trans.add_argument("--alpha-grid", required=True, help="e.g. 0,0.5,1,2.7")
    p_trans.add_argument("--t-max", type=int, default=100)
    p_trans.add_argument("--trials", type=int, default=50)
    p_trans.add_argument(
        "--encoding", choices=("ers", "cms", "erm", "cmm"), default="cmm"
    )
    p_trans.set_defaults(func=cmd_transition)

    p_verify = sub.add_parser(
        "verify", parents=[common],
        help="run the brute-force oracle comparisons and module invariants",
    )
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    ns = parser.parse_args(argv)
    command = shlex.join(argv)
    try:
        return ns.func(ns, command)
    except (ParseError, FeasibilityError, ValueError, OSError) as exc:
        print(f"hubmdl: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
