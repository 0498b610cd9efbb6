"""hubmdl: minimum-description-length hub classification for directed networks.

A hub set is worth announcing when transmitting the edges into it
separately shortens the total description of the graph. The package
evaluates four encodings (one-step and two-step, for simple graphs and
multigraphs), finds the optimal hub set in O(N log N), and ships the
comparison baselines, degree-sequence samplers, and a growth-model
testbed used to study when hubs emerge.
"""

__version__ = "0.1.0"

from .baselines import (
    BaselineResult,
    average_hubs,
    loubar_hubs,
    normalized_degree_entropy,
)
from .codelength import (
    Bits,
    DegreeSequence,
    EncodingKind,
    FeasibilityError,
    baseline_dl,
    check_simple_feasible,
    hub_dl,
    log2_binomial,
    log2_binomial_exact,
    log2_multiset,
)
from .graphio import (
    DirectedGraph,
    ParseError,
    ParseOptions,
    degree_sequence,
    parse_edge_list,
    serialize_edge_list,
)
from .hubfinder import (
    GraphFamily,
    HubResult,
    brute_force_hubs,
    identify_hubs,
    inverse_compression_ratio,
    select_encoding,
)
from .synth import (
    DegreeDistribution,
    GrowthTrace,
    PriceParams,
    hub_transition,
    price_simulate,
    sample_degrees,
    solve_zipf_exponent,
    trace_hub_counts,
    transition_curve,
)

__all__ = [
    "__version__",
    "Bits",
    "DegreeSequence",
    "EncodingKind",
    "FeasibilityError",
    "GraphFamily",
    "HubResult",
    "BaselineResult",
    "DirectedGraph",
    "ParseError",
    "ParseOptions",
    "DegreeDistribution",
    "PriceParams",
    "GrowthTrace",
    "log2_binomial",
    "log2_binomial_exact",
    "log2_multiset",
    "baseline_dl",
    "hub_dl",
    "check_simple_feasible",
    "identify_hubs",
    "inverse_compression_ratio",
    "select_encoding",
    "brute_force_hubs",
    "average_hubs",
    "loubar_hubs",
    "normalized_degree_entropy",
    "sample_degrees",
    "solve_zipf_exponent",
    "price_simulate",
    "hub_transition",
    "transition_curve",
    "trace_hub_counts",
    "parse_edge_list",
    "serialize_edge_list",
    "degree_sequence",
]
