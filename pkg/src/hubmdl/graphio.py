"""Edge-list parsing and degree-sequence extraction for directed graphs.

The text format is one edge per line: source, target, and an optional
positive integer weight, separated by a consistent delimiter. Node labels
map to dense indices in first-appearance order so results are reproducible
from the same file bytes. Parsed graphs are immutable.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Dict, Iterable, List, Literal, Tuple, Union

import numpy as np

from .codelength import DegreeSequence
from .hubfinder import GraphFamily

__all__ = [
    "ParseError",
    "ParseOptions",
    "DirectedGraph",
    "parse_edge_list",
    "degree_sequence",
    "serialize_edge_list",
]


class ParseError(ValueError):
    """Malformed edge-list input; message carries the 1-based line number."""


@dataclass(frozen=True)
class ParseOptions:
    """Knobs for edge-list interpretation.

    binarize drops weights, self-loops, and duplicate edges, forcing a
    simple graph (the usual cleanup for corpora with non-integral
    weights). Without binarize, a weight column requires `weighted` and
    must hold positive integers. n_nodes_override declares isolated nodes
    that an edge list cannot represent.
    """

    delimiter: Literal["auto", "whitespace", "comma", "tab"] = "auto"
    weighted: bool = False
    binarize: bool = False
    allow_self_loops: bool = True
    comment_prefix: str = "#"
    n_nodes_override: int | None = None


@dataclass(frozen=True)
class DirectedGraph:
    """Parsed directed graph with integer edge multiplicities.

    edges hold (source, target, multiplicity) with dense indices in
    [0, n_nodes); labels[i] is the original token for index i. family is
    simple exactly when there are no self-loops and no multiplicity
    exceeds one.
    """

    n_nodes: int
    edges: Tuple[Tuple[int, int, int], ...]
    family: GraphFamily
    labels: Tuple[str, ...]

    @property
    def label_map(self) -> Dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, _, m in self.edges)


def _detect_delimiter(lines: List[str]) -> str:
    """Classify the first 100 data lines; mixed signals are an error."""
    sample = lines[:100]
    has_comma = [("," in ln) for ln in sample]
    has_tab = [("\t" in ln) for ln in sample]
    if any(has_comma) and any(has_tab):
        raise ParseError(
            "ambiguous delimiter: sampled lines contain both commas and tabs"
        )
    if any(has_comma):
        if not all(has_comma):
            raise ParseError(
                "inconsistent delimiter: only some sampled lines contain commas"
            )
        return ","
    if any(has_tab):
        if not all(has_tab):
            raise ParseError(
                "inconsistent delimiter: only some sampled lines contain tabs"
            )
        return "\t"
    return ""  # whitespace


def _split(line: str, delim: str) -> List[str]:
    if delim == "":
        return line.split()
    return [f.strip() for f in line.split(delim)]


def _parse_weight(token: str, lineno: int, binarize: bool) -> int:
    """Weight tokens must be positive integers unless binarize collapses them."""
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: weight {token!r} is not a number") from None
    if value <= 0:
        raise ParseError(f"line {lineno}: weight must be positive, got {token!r}")
    if binarize:
        return 1
    if value != int(value):
        raise ParseError(
            f"line {lineno}: non-integer weight {token!r}; pass binarize to "
            "collapse weights to unweighted edges"
        )
    return int(value)


def parse_edge_list(
    source: Union[str, Iterable[str]], opts: ParseOptions = ParseOptions()
) -> DirectedGraph:
    """Parse edge-list text into a DirectedGraph.

    `source` is the raw text or any iterable of lines (including an open
    file). Comment lines and blank lines are skipped. Duplicate edges
    accumulate multiplicity; with binarize they collapse to one and
    self-loops are dropped, which guarantees a simple-graph-feasible
    result.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    elif isinstance(source, io.TextIOBase):
        lines = source.read().splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in source]

    data: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(opts.comment_prefix):
            continue
        data.append((lineno, stripped))
    if not data:
        raise ParseError("no edges found in input")

    if opts.delimiter == "auto":
        delim = _detect_delimiter([ln for _, ln in data])
    else:
        delim = {"whitespace": "", "comma": ",", "tab": "\t"}[opts.delimiter]

    index: Dict[str, int] = {}
    labels: List[str] = []

    def dense(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    mult: Dict[Tuple[int, int], int] = {}
    order: List[Tuple[int, int]] = []
    saw_self_loop = False
    for lineno, line in data:
        fields = _split(line, delim)
        if len(fields) == 2:
            weight = 1
        elif len(fields) == 3:
            if not (opts.weighted or opts.binarize):
                raise ParseError(
                    f"line {lineno}: unexpected weight column; pass weighted "
                    "(integer multiplicities) or binarize"
                )
            weight = _parse_weight(fields[2], lineno, opts.binarize)
        else:
            raise ParseError(
                f"line {lineno}: expected 'source target [weight]', "
                f"got {len(fields)} fields"
            )
        s, t = dense(fields[0]), dense(fields[1])
        if s == t:
            if opts.binarize:
                continue
            if not opts.allow_self_loops:
                raise ParseError(f"line {lineno}: self-loop on {fields[0]!r}")
            saw_self_loop = True
        key = (s, t)
        if key in mult:
            mult[key] = 1 if opts.binarize else mult[key] + weight
        else:
            mult[key] = weight
            order.append(key)

    if not order:
        raise ParseError("no edges survived parsing (all were dropped self-loops)")

    n_observed = len(labels)
    n_nodes = n_observed
    if opts.n_nodes_override is not None:
        if opts.n_nodes_override < n_observed:
            raise ValueError(
                f"n_nodes_override={opts.n_nodes_override} is below the "
                f"{n_observed} labels observed"
            )
        n_nodes = opts.n_nodes_override
        labels = labels + [f"_isolated_{i}" for i in range(n_observed, n_nodes)]

    multigraph = saw_self_loop or any(m > 1 for m in mult.values())
    family = GraphFamily.MULTIGRAPH if multigraph else GraphFamily.SIMPLE
    edges = tuple((s, t, mult[(s, t)]) for s, t in order)
    return DirectedGraph(n_nodes, edges, family, tuple(labels))


def degree_sequence(g: DirectedGraph, direction: Literal["in", "out"]) -> DegreeSequence:
    """Multiplicity-weighted in- or out-degrees over all nodes."""
    if direction not in ("in", "out"):
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")
    counts = np.zeros(g.n_nodes, dtype=np.int64)
    pos = 1 if direction == "in" else 0
    for edge in g.edges:
        counts[edge[pos]] += edge[2]
    return DegreeSequence(counts)


def serialize_edge_list(g: DirectedGraph) -> str:
    """Edge-list text that parses back to an identical graph.

    Multigraphs carry the multiplicity column (re-parse with weighted);
    simple graphs serialize as bare source/target pairs. Label order is
    preserved, so the round trip reproduces the same dense indices.
    """
    out = []
    weighted = g.family is GraphFamily.MULTIGRAPH
    for s, t, m in g.edges:
        if weighted:
            out.append(f"{g.labels[s]} {g.labels[t]} {m}")
        else:
            out.append(f"{g.labels[s]} {g.labels[t]}")
    return "\n".join(out) + "\n"
