"""Threshold-style hub baselines and the normalized degree entropy.

Both comparison methods pick hubs purely from the degree sequence: the
average method keeps every node at or above the mean degree, and the
Loubar method keeps the top mean/max fraction of nodes, a rule derived
from the Lorenz curve of the flows.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import FrozenSet, Literal

import numpy as np

from .codelength import DegreeSequence

__all__ = [
    "BaselineResult",
    "average_hubs",
    "loubar_hubs",
    "normalized_degree_entropy",
]


@dataclass(frozen=True)
class BaselineResult:
    method: Literal["average", "loubar"]
    hub_ids: FrozenSet[int]
    h: int


def average_hubs(deg: DegreeSequence) -> BaselineResult:
    """Hubs are all nodes with degree >= M/N (exact rational comparison).

    The >= follows the method's definition verbatim, so uniform sequences
    classify every node as a hub; the all-zero corner does too, and is
    flagged with a warning since the threshold is vacuous there.
    """
    n, m = deg.n_nodes, deg.total
    if m == 0:
        warnings.warn(
            "all degrees are zero: the mean-degree threshold classifies "
            "every node as a hub",
            stacklevel=2,
        )
    # k >= M/N for integer k is k >= ceil(M/N); avoids overflow-prone k*N
    mask = deg.degrees >= -(-m // n)
    hub_ids = frozenset(int(i) for i in np.flatnonzero(mask))
    return BaselineResult("average", hub_ids, len(hub_ids))


def loubar_hubs(deg: DegreeSequence) -> BaselineResult:
    """Hubs are the ceil(N * mean/max) highest-degree nodes.

    This is the count form of the Lorenz-curve rule: the hub fraction is
    mean/max up to the integer ceiling, so |h/N - mean/max| < 1/N always.
    Ties at the marginal degree break by ascending node index. Undefined
    when every degree is zero.
    """
    n, m = deg.n_nodes, deg.total
    mx = int(deg.degrees.max())
    if mx == 0:
        raise ValueError("loubar threshold undefined: all degrees are zero")
    h = -(-m // mx)  # ceil(M/max) == ceil(N * mean / max)
    order = deg.sort_order()
    hub_ids = frozenset(int(i) for i in order[:h])
    return BaselineResult("loubar", hub_ids, h)


def normalized_degree_entropy(deg: DegreeSequence) -> float:
    """Shannon entropy of the degree shares k_i/M, normalized by log2 N.

    0 when a single node holds every edge, 1 when all degrees are equal
    (both returned exactly); 0*log(0) terms are dropped. Requires at least
    one edge and two nodes.
    """
    n, m = deg.n_nodes, deg.total
    if m == 0:
        raise ValueError("degree entropy undefined for an empty edge set")
    if n < 2:
        raise ValueError("degree entropy undefined for a single node")
    k = deg.degrees[deg.degrees > 0]
    if np.all(deg.degrees == deg.degrees[0]):
        return 1.0  # identical degrees: entropy is exactly log2 N
    p = k / m
    raw = -np.sum(p * np.log2(p))
    # mathematically in [0, log2 N]; clip float roundoff at the edges
    return float(min(max(raw / math.log2(n), 0.0), 1.0))
