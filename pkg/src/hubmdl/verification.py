"""End-to-end validity checks: oracle equivalence and module invariants.

Each check draws its own reproducible instances from a (seed, check) RNG
stream and reports pass/fail with a short diagnostic. The exact
big-integer code-length route ranks candidates wherever a tolerance-free
comparison is possible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .baselines import average_hubs, loubar_hubs, normalized_degree_entropy
from .codelength import (
    DegreeSequence,
    EncodingKind,
    hub_dl,
    hub_dl_product,
    log2_binomial,
)
from .hubfinder import brute_force_hubs, identify_hubs
from .synth import (
    DegreeDistribution,
    PriceParams,
    derive_rng,
    derive_seed,
    price_simulate,
    sample_degrees,
)

__all__ = ["CheckResult", "VerificationReport", "run_all", "CHECKS"]

ORACLE_TOL_BITS = 1e-9
DELTA_TOL_BITS = 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_degrees(rng, n_max=10, k_max=8, simple=False):
    n = int(rng.integers(2, n_max + 1))
    cap = min(k_max, n - 1) if simple else k_max
    degs = rng.integers(0, cap + 1, size=n)
    if degs.sum() == 0:
        degs[0] = max(cap, 1)
    return DegreeSequence(degs)


def check_er_oracle(trials: int, seed: int) -> CheckResult:
    """Greedy minimum equals the exhaustive-subset minimum for the one-step codes."""
    rng = derive_rng(seed, 1)
    worst = 0.0
    for _ in range(trials):
        for enc, simple in ((EncodingKind.ERS, True), (EncodingKind.ERM, False)):
            deg = _random_degrees(rng, simple=simple)
            gap = abs(
                identify_hubs(deg, enc).l_star - brute_force_hubs(deg, enc).l_star
            )
            worst = max(worst, gap)
            if gap > ORACLE_TOL_BITS:
                return CheckResult(
                    "er_oracle_equivalence",
                    False,
                    f"greedy vs brute force differ by {gap:.3g} bits on "
                    f"{deg.degrees.tolist()} under {enc.value}",
                )
    return CheckResult(
        "er_oracle_equivalence", True,
        f"{trials} instances per encoding, worst gap {worst:.3g} bits",
    )


def check_cm_swap(trials: int, seed: int) -> CheckResult:
    """No hub<->non-hub swap in the guaranteed regime improves the CM result.

    The local-optimality guarantee for the two-step codes covers swaps
    whose incoming degree stays at or above the mean degree; swaps below
    the mean can genuinely improve dense small instances and are excluded.
    Comparisons are exact (big-integer).
    """
    rng = derive_rng(seed, 2)
    checked = 0
    for _ in range(trials):
        for enc, simple in ((EncodingKind.CMS, True), (EncodingKind.CMM, False)):
            deg = _random_degrees(rng, simple=simple)
            res = identify_hubs(deg, enc)
            h = res.h_star
            if h == 0:
                continue
            s = deg.sorted_desc()
            hub = s[:h].tolist()
            non = s[h:].tolist()
            base = hub_dl_product(enc, deg, hub)
            mean = deg.total / deg.n_nodes
            for a in sorted(set(hub)):
                for b in sorted(set(non)):
                    if b >= a or b < mean:
                        continue
                    swapped = list(hub)
                    swapped.remove(a)
                    swapped.append(b)
                    checked += 1
                    if hub_dl_product(enc, deg, swapped) < base:
                        return CheckResult(
                            "cm_swap_local_optimality",
                            False,
                            f"swap {a}->{b} improves {enc.value} on "
                            f"{deg.degrees.tolist()}",
                        )
    return CheckResult(
        "cm_swap_local_optimality", True, f"{checked} in-regime swaps, none improving"
    )


def check_vandermonde(trials: int, seed: int) -> CheckResult:
    """C(sum x, sum y) >= prod C(x_n, y_n) for y_n <= x_n, exactly."""
    rng = derive_rng(seed, 3)
    for _ in range(trials):
        parts = int(rng.integers(1, 7))
        x = rng.integers(0, 13, size=parts)
        y = np.array([rng.integers(0, xi + 1) for xi in x])
        lhs = math.comb(int(x.sum()), int(y.sum()))
        rhs = 1
        for xi, yi in zip(x.tolist(), y.tolist()):
            rhs *= math.comb(xi, yi)
        if lhs < rhs:
            return CheckResult(
                "vandermonde_inequality", False,
                f"violated at x={x.tolist()} y={y.tolist()}",
            )
    return CheckResult("vandermonde_inequality", True, f"{trials} instances hold")


def check_baseline_ordering(samples: int, seed: int) -> CheckResult:
    """Two-step baseline beats the one-step baseline on heterogeneous
    sequences (geometric, mean 50, N=1e4).

    The ordering is driven by degree heterogeneity: the degrees-first code
    pays ~N*log2(mean+1) bits up front and wins only when knowing the
    degrees saves more than that, which homogeneous (Poisson) sequences
    never provide. Geometric sequences sit well inside the winning regime.
    """
    from .codelength import baseline_dl

    for i in range(samples):
        deg = sample_degrees(
            DegreeDistribution("geometric", 50.0), 10**4, seed=derive_seed(seed, 4, i)
        )
        er = baseline_dl(EncodingKind.ERS, deg)
        cm = baseline_dl(EncodingKind.CMS, deg)
        if cm > er:
            return CheckResult(
                "baseline_ordering", False,
                f"sample {i}: CMs baseline {cm:.3f} exceeds ERs baseline {er:.3f}",
            )
    return CheckResult("baseline_ordering", True, f"CMs <= ERs on {samples} samples")


def check_delta_sign(trials: int, seed: int) -> CheckResult:
    """Moving one degree unit into an above-average hub set always helps.

    The code-length change must match the closed-form ratio of adjacent
    binomial coefficients to 1e-6 bits and be negative whenever the hub
    mean degree is at least the overall mean.
    """
    rng = derive_rng(seed, 5)
    done = 0
    while done < trials:
        n = int(rng.integers(4, 12))
        degs = rng.integers(0, n - 1, size=n)  # keep headroom for the +1
        deg = DegreeSequence(degs)
        m = deg.total
        s = deg.sorted_desc()
        h = int(rng.integers(1, n))
        hub = s[:h]
        mh = int(hub.sum())
        donors = s[h:][s[h:] >= 1]
        if m == 0 or mh >= m or donors.size == 0 or mh * n < m * h:
            continue  # need a donor unit and hub mean >= overall mean
        if hub[0] + 1 > n - 1 or mh + 1 > h * (n - 1):
            continue
        # bump the largest hub degree by one, take the unit from a donor
        new_degs = np.concatenate((hub.copy(), s[h:].copy()))
        new_degs[0] += 1
        donor_pos = h + int(np.flatnonzero(s[h:] >= 1)[0])
        new_degs[donor_pos] -= 1
        deg2 = DegreeSequence(new_degs)
        hub2 = new_degs[:h]
        before = hub_dl(EncodingKind.ERS, deg, hub.tolist())
        after = hub_dl(EncodingKind.ERS, deg2, hub2.tolist())
        delta = after - before
        closed = math.log2(
            (h * (n - 1) - mh) * (m - mh)
        ) - math.log2(
            (mh + 1) * ((n - 1) * (n - h) - (m - mh) + 1)
        )
        if abs(delta - closed) > DELTA_TOL_BITS:
            return CheckResult(
                "incremental_delta_sign", False,
                f"delta {delta:.9f} != closed form {closed:.9f} on "
                f"{degs.tolist()} h={h}",
            )
        if delta >= 0:
            return CheckResult(
                "incremental_delta_sign", False,
                f"delta {delta:.9f} not negative with hub mean >= overall mean "
                f"on {degs.tolist()} h={h}",
            )
        done += 1
    return CheckResult(
        "incremental_delta_sign", True,
        f"{trials} instances match the closed form and are negative",
    )


def check_eta_bounds(trials: int, seed: int) -> CheckResult:
    """eta in [0,1] and l* never above the encoding's own baseline."""
    from .codelength import baseline_dl

    rng = derive_rng(seed, 6)
    for _ in range(trials):
        for enc, simple in (
            (EncodingKind.ERS, True), (EncodingKind.CMS, True),
            (EncodingKind.ERM, False), (EncodingKind.CMM, False),
        ):
            deg = _random_degrees(rng, n_max=12, simple=simple)
            res = identify_hubs(deg, enc)
            if not (0.0 <= res.eta <= 1.0):
                return CheckResult(
                    "eta_bounds", False,
                    f"eta={res.eta} on {deg.degrees.tolist()} under {enc.value}",
                )
            if res.l_star > baseline_dl(enc, deg) + ORACLE_TOL_BITS:
                return CheckResult(
                    "eta_bounds", False,
                    f"l*={res.l_star} exceeds baseline on {deg.degrees.tolist()} "
                    f"under {enc.value}",
                )
    return CheckResult("eta_bounds", True, f"{trials} instances per encoding in bounds")


def check_prefix_property(trials: int, seed: int) -> CheckResult:
    """Every returned hub set is a degree-threshold set."""
    rng = derive_rng(seed, 7)
    for _ in range(trials):
        for enc, simple in ((EncodingKind.ERM, False), (EncodingKind.CMM, False),
                            (EncodingKind.ERS, True), (EncodingKind.CMS, True)):
            deg = _random_degrees(rng, n_max=12, simple=simple)
            res = identify_hubs(deg, enc)
            if res.h_star == 0:
                continue
            hubs = np.array(sorted(res.hub_ids))
            non = np.setdiff1d(np.arange(deg.n_nodes), hubs)
            if non.size and deg.degrees[hubs].min() < deg.degrees[non].max():
                return CheckResult(
                    "hub_prefix_property", False,
                    f"non-threshold hub set on {deg.degrees.tolist()} under {enc.value}",
                )
    return CheckResult("hub_prefix_property", True, f"{trials} instances per encoding")


def check_permutation_invariance(trials: int, seed: int) -> CheckResult:
    """Shuffling node labels permutes hub_ids and changes nothing else."""
    rng = derive_rng(seed, 8)
    for _ in range(trials):
        deg = _random_degrees(rng, n_max=12)
        perm = rng.permutation(deg.n_nodes)
        shuffled = DegreeSequence(deg.degrees[perm])
        for enc in (EncodingKind.ERM, EncodingKind.CMM):
            a = identify_hubs(deg, enc)
            b = identify_hubs(shuffled, enc)
            mapped = frozenset(int(np.flatnonzero(perm == i)[0]) for i in a.hub_ids)
            if (
                a.h_star != b.h_star
                or abs(a.l_star - b.l_star) > 1e-6
                or abs(a.eta - b.eta) > 1e-9
                or mapped != b.hub_ids
            ):
                return CheckResult(
                    "permutation_invariance", False,
                    f"permutation changed the result on {deg.degrees.tolist()} "
                    f"under {enc.value}",
                )
    return CheckResult("permutation_invariance", True, f"{trials} instances")


def check_loubar_count(trials: int, seed: int) -> CheckResult:
    """|h/N - mean/max| < 1/N for the Loubar construction."""
    rng = derive_rng(seed, 9)
    for _ in range(trials):
        deg = _random_degrees(rng, n_max=40, k_max=30)
        res = loubar_hubs(deg)
        n = deg.n_nodes
        gap = abs(res.h / n - deg.total / (n * int(deg.degrees.max())))
        if not gap < 1.0 / n:
            return CheckResult(
                "loubar_count", False,
                f"|h/N - mean/max| = {gap} on {deg.degrees.tolist()}",
            )
    return CheckResult("loubar_count", True, f"{trials} instances within 1/N")


def check_entropy_bounds(trials: int, seed: int) -> CheckResult:
    """Entropy hits the exact extremes and stays in [0,1] elsewhere."""
    rng = derive_rng(seed, 10)
    one_hot = DegreeSequence([7, 0, 0, 0])
    uniform = DegreeSequence([3, 3, 3, 3, 3])
    if normalized_degree_entropy(one_hot) != 0.0:
        return CheckResult("entropy_bounds", False, "single-target entropy not exactly 0")
    if normalized_degree_entropy(uniform) != 1.0:
        return CheckResult("entropy_bounds", False, "uniform entropy not exactly 1")
    for _ in range(trials):
        deg = _random_degrees(rng, n_max=30, k_max=20)
        value = normalized_degree_entropy(deg)
        if not (0.0 <= value <= 1.0):
            return CheckResult(
                "entropy_bounds", False, f"entropy {value} on {deg.degrees.tolist()}"
            )
    return CheckResult("entropy_bounds", True, f"extremes exact, {trials} instances in [0,1]")


def check_cm_encoding_ordering(trials: int, seed: int) -> CheckResult:
    """Two-step beats one-step on the same hub set in the high-degree regime.

    Like the baseline ordering, this needs heterogeneous hub degrees: with
    identical hub degrees the degrees-first overhead always loses. The
    instances here use wide-spread hub degrees (mean >= 100, h >= 10,
    N >= 1e3), squarely inside the winning regime.
    """
    rng = derive_rng(seed, 11)
    for _ in range(trials):
        n = int(rng.integers(1000, 3000))
        h = int(rng.integers(10, 41))
        hub_degs = rng.integers(100, 601, size=h)
        rest = rng.integers(0, 4, size=n - h)
        degs = np.concatenate((hub_degs, rest))
        deg = DegreeSequence(degs)
        hub = np.sort(hub_degs)[::-1].tolist()
        cm = hub_dl(EncodingKind.CMS, deg, hub)
        er = hub_dl(EncodingKind.ERS, deg, hub)
        if cm > er:
            return CheckResult(
                "cm_encoding_ordering", False,
                f"CMs {cm:.2f} > ERs {er:.2f} with hub mean "
                f"{np.mean(hub_degs):.0f}, N={n}",
            )
    return CheckResult("cm_encoding_ordering", True, f"{trials} high-degree instances")


def check_average_trend(seed: int) -> CheckResult:
    """Average-method mean hub count trends upward under linear growth.

    The curve has small systematic oscillations (the integer threshold
    crosses degree levels), so the one-sided check compares 10-step block
    means rather than consecutive points.
    """
    params = PriceParams(m=4, alpha=1.0, t_max=60, trials=30, seed=seed)
    t_max, trials = params.t_max, params.trials
    counts = np.zeros((trials, t_max))
    for trial in range(trials):
        trace = price_simulate(params, seed=derive_seed(seed, 12, trial))
        for i, snap in enumerate(trace.in_degrees):
            counts[trial, i] = average_hubs(DegreeSequence(snap)).h
    window = 10
    blocks = counts.reshape(trials, t_max // window, window).mean(axis=2)
    mean = blocks.mean(axis=0)
    se = blocks.std(axis=0, ddof=1) / math.sqrt(trials)
    for b in range(len(mean) - 1):
        if mean[b + 1] < mean[b] - 2.0 * (se[b] + se[b + 1]) - 1e-9:
            return CheckResult(
                "average_trend", False,
                f"block-mean average-method hub count drops at block {b + 1}",
            )
    return CheckResult(
        "average_trend", True,
        "block means non-decreasing within two standard errors",
    )


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    trials: int
    checks: List[CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> CheckResult | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None


CHECKS: List[Callable[..., CheckResult]] = [
    check_er_oracle,
    check_cm_swap,
    check_vandermonde,
    check_baseline_ordering,
    check_delta_sign,
    check_eta_bounds,
    check_prefix_property,
    check_permutation_invariance,
    check_loubar_count,
    check_entropy_bounds,
    check_cm_encoding_ordering,
    check_average_trend,
]


def run_all(trials: int = 200, seed: int = 0) -> VerificationReport:
    """Run every check with sizes scaled off `trials` (the oracle count)."""
    results = [
        check_er_oracle(trials, seed),
        check_cm_swap(trials, seed),
        check_vandermonde(max(5 * trials, 100), seed),
        check_baseline_ordering(max(trials // 10, 5), seed),
        check_delta_sign(trials, seed),
        check_eta_bounds(trials, seed),
        check_prefix_property(trials, seed),
        check_permutation_invariance(trials, seed),
        check_loubar_count(trials, seed),
        check_entropy_bounds(trials, seed),
        check_cm_encoding_ordering(max(trials // 10, 5), seed),
        check_average_trend(seed),
    ]
    return VerificationReport(seed, trials, results)
