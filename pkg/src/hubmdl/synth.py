"""Degree-sequence samplers and the growing-network testbed.

Three single-parameter degree distributions (Poisson, Geometric, Zipf)
cover increasing relative variance; sampled sequences are read as
multigraph degrees so every draw is realizable. The growth model attaches
each arriving node's out-edges to distinct existing nodes with probability
proportional to (in-degree + 1)^alpha, starting from degree-zero seeds.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Literal, Sequence

import numpy as np

from .baselines import average_hubs, loubar_hubs
from .codelength import DegreeSequence, EncodingKind
from .hubfinder import identify_hubs

__all__ = [
    "DegreeDistribution",
    "PriceParams",
    "GrowthTrace",
    "sample_degrees",
    "solve_zipf_exponent",
    "zipf_truncation",
    "price_simulate",
    "hub_transition",
    "transition_curve",
    "trace_hub_counts",
    "derive_rng",
    "derive_seed",
]

_ZIPF_MEAN_RTOL = 1e-6
_ZIPF_S_LO = -64.0
_ZIPF_S_HI = 512.0


def derive_rng(*parts: int) -> np.random.Generator:
    """Independent generator for a (seed, cell, trial, ...) key.

    Streams derived from distinct keys are statistically independent and
    reproducible regardless of execution order, so trials can run
    concurrently without coordination.
    """
    return np.random.default_rng(np.random.SeedSequence([int(p) for p in parts]))


def derive_seed(*parts: int) -> int:
    """Collapse a stream key to a single 64-bit integer seed."""
    ss = np.random.SeedSequence([int(p) for p in parts])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class DegreeDistribution:
    """A degree-distribution family pinned down by its mean.

    poisson supports {0,1,...} (relative variance 1/mean); geometric
    supports {1,2,...} with success probability 1/mean (relative variance
    1 - 1/mean); zipf supports {1,...,k_max} with the exponent solved from
    the mean (relative variance can be large).
    """

    family: Literal["poisson", "geometric", "zipf"]
    mean: float

    def __post_init__(self):
        if self.family not in ("poisson", "geometric", "zipf"):
            raise ValueError(f"unknown distribution family {self.family!r}")
        if self.mean <= 0:
            raise ValueError("mean must be positive")
        if self.family == "geometric" and self.mean < 1:
            raise ValueError("geometric mean must be >= 1 (support starts at 1)")
        if self.family == "zipf" and self.mean <= 1:
            raise ValueError("zipf mean must be > 1 (support starts at 1)")


def zipf_truncation(mean: float) -> int:
    """Support cutoff used for the truncated zipf: max(1e7, 1000 * mean)."""
    return max(10**7, int(1000 * mean))


def _zipf_logk(k_max: int) -> np.ndarray:
    return np.log(np.arange(1, k_max + 1, dtype=np.float64))


def _zipf_mean(s: float, logk: np.ndarray) -> float:
    logw = -s * logk
    shift = logw.max()
    w0 = np.exp(logw - shift)
    w1 = np.exp(logw + logk - shift)
    return float(w1.sum() / w0.sum())


def solve_zipf_exponent(mean: float, k_max: int) -> float:
    """Exponent s for which the truncated zipf mean hits the target.

    The truncated mean is strictly decreasing in s, so plain bisection
    converges; the solve stops once the re-evaluated mean matches the
    target to 1e-6 relative. Targets outside the achievable range raise
    with the achievable bracket in the message.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    logk = _zipf_logk(k_max)
    lo, hi = _ZIPF_S_LO, _ZIPF_S_HI
    mean_lo = _zipf_mean(lo, logk)  # largest achievable mean
    mean_hi = _zipf_mean(hi, logk)  # smallest achievable mean (-> 1)
    if not (mean_hi <= mean <= mean_lo):
        raise ValueError(
            f"zipf mean {mean} is outside the achievable range "
            f"[{mean_hi:.6g}, {mean_lo:.6g}] for support 1..{k_max}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        value = _zipf_mean(mid, logk)
        if abs(value - mean) <= _ZIPF_MEAN_RTOL * mean:
            return mid
        if value > mean:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@lru_cache(maxsize=2)
def _zipf_cdf(mean: float, k_max: int):
    logk = _zipf_logk(k_max)
    s = solve_zipf_exponent(mean, k_max)
    logw = -s * logk
    w = np.exp(logw - logw.max())
    cdf = np.cumsum(w)
    cdf /= cdf[-1]
    return s, cdf


def sample_degrees(dist: DegreeDistribution, n: int, seed: int) -> DegreeSequence:
    """Draw n independent degrees; deterministic for a fixed seed."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = derive_rng(seed)
    if dist.family == "poisson":
        draws = rng.poisson(dist.mean, n)
    elif dist.family == "geometric":
        draws = rng.geometric(1.0 / dist.mean, n)
    else:
        _, cdf = _zipf_cdf(dist.mean, zipf_truncation(dist.mean))
        draws = np.searchsorted(cdf, rng.random(n)) + 1
    return DegreeSequence(draws.astype(np.int64))


@dataclass(frozen=True)
class PriceParams:
    """Growth-model configuration.

    m is both the arriving out-degree and the number of degree-zero seed
    nodes, so after t steps the network has m + t nodes and m * t total
    in-degree. alpha tunes the attachment preference from uniform (0)
    through linear (1) to superlinear.
    """

    m: int
    alpha: float
    t_max: int
    trials: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.t_max < 1:
            raise ValueError("t_max must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class GrowthTrace:
    """Per-timestep in-degree sequences of one growth simulation.

    in_degrees[t-1] holds the m+t node degrees after step t; its sum is
    always m*t.
    """

    params: PriceParams
    seed: int
    in_degrees: List[np.ndarray]

    def degree_sequence(self, t: int) -> DegreeSequence:
        if not 1 <= t <= len(self.in_degrees):
            raise ValueError(f"step {t} outside 1..{len(self.in_degrees)}")
        return DegreeSequence(self.in_degrees[t - 1])


def price_simulate(params: PriceParams, seed: int | None = None) -> GrowthTrace:
    """Run one growth simulation and record every step's in-degrees.

    Each arriving node attaches its m out-edges to m distinct existing
    nodes, drawn by weight (k+1)^alpha without replacement (the first
    arrival therefore hits every seed once). Weights use the degrees as of
    the arrival, not updated mid-step.
    """
    if seed is None:
        seed = params.seed
    rng = derive_rng(seed)
    m, alpha, t_max = params.m, params.alpha, params.t_max
    deg = np.zeros(m + t_max, dtype=np.int64)
    steps: List[np.ndarray] = []
    for t in range(1, t_max + 1):
        n_exist = m + t - 1
        if m >= n_exist:
            targets = np.arange(n_exist)
        else:
            # Gumbel top-m == sequential weighted draw without replacement
            keys = alpha * np.log1p(deg[:n_exist]) + rng.gumbel(size=n_exist)
            targets = np.argpartition(keys, n_exist - m)[n_exist - m:]
        deg[targets] += 1
        snapshot = deg[: m + t].copy()
        snapshot.setflags(write=False)
        steps.append(snapshot)
    return GrowthTrace(params, seed, steps)


def trace_hub_counts(
    trace: GrowthTrace,
    encodings: Sequence[EncodingKind] = (EncodingKind.ERM, EncodingKind.CMM),
) -> Dict[str, np.ndarray]:
    """Per-step hub counts for the MDL encodings plus both baselines.

    Returns arrays of length t_max keyed by encoding value ("erm", ...)
    and by "average" / "loubar".
    """
    t_max = len(trace.in_degrees)
    out: Dict[str, np.ndarray] = {enc.value: np.zeros(t_max) for enc in encodings}
    out["average"] = np.zeros(t_max)
    out["loubar"] = np.zeros(t_max)
    for i, snapshot in enumerate(trace.in_degrees):
        ds = DegreeSequence(snapshot)
        for enc in encodings:
            out[enc.value][i] = identify_hubs(ds, enc).h_star
        out["average"][i] = average_hubs(ds).h
        out["loubar"][i] = loubar_hubs(ds).h
    return out


def transition_curve(params: PriceParams, enc: EncodingKind) -> np.ndarray:
    """Trial-mean hub count per timestep under one encoding.

    Trials use streams keyed by (params.seed, trial), so the curve is
    reproducible independently of execution order.
    """
    total = np.zeros(params.t_max)
    for trial in range(params.trials):
        trace = price_simulate(params, seed=derive_seed(params.seed, trial))
        for i, snapshot in enumerate(trace.in_degrees):
            total[i] += identify_hubs(DegreeSequence(snapshot), enc).h_star
    return total / params.trials


def hub_transition(params: PriceParams, enc: EncodingKind) -> int | None:
    """First timestep at which the trial-mean hub count reaches one.

    Returns the smallest t with mean h* >= 1 over params.trials
    simulations, or None if the sweep never gets there by t_max.
    """
    mean_curve = transition_curve(params, enc)
    reached = np.flatnonzero(mean_curve >= 1.0)
    return int(reached[0]) + 1 if reached.size else None
