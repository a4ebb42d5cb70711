"""Partitions of edge-coloured hypergraphs into monochromatic tight cycles."""

from .absorption import AbsorptionConfig, BlockPathPlan, absorb_cover, colour_split
from .driver import (
    DriverConfig, PartitionCertificate, brute_force_partition, greedy_cover, partition,
    power_lift_back, power_partition, power_reduce, verify_certificate,
)
from .errors import (
    AbsorptionError, HypothesisViolation, InvalidArgument, InvalidCycle, MalformedCycle,
    PreconditionViolation, SizeLimitError, TightCycleError,
)
from .hypergraph import (
    ColouredHypergraph, Hypergraph, LinkGraph, VertexPartition, clique_hypergraph,
    independence_number, link_graph,
)
from .lemmas import SubsetFamily, group_blocks, independent_transversal, posa_cycle_cover, posa_path_cover
from .oracles import colouring_scan, enumerate_mono_tight_cycles, min_partition_size
from .search import SearchBudget, connect, find_mono_crown, longest_mono_tight_cycle
from .tight import (
    Crown, TightCycle, TightPath, absorbs, build_crown, lift_cycle, prescribed_length, tp,
    tp_pair, validate_cycle,
)

__version__ = "0.1.0"

__all__ = [
    "absorb_cover",
    "absorbs",
    "AbsorptionConfig",
    "AbsorptionError",
    "BlockPathPlan",
    "brute_force_partition",
    "build_crown",
    "clique_hypergraph",
    "colour_split",
    "ColouredHypergraph",
    "colouring_scan",
    "connect",
    "Crown",
    "DriverConfig",
    "enumerate_mono_tight_cycles",
    "find_mono_crown",
    "greedy_cover",
    "group_blocks",
    "Hypergraph",
    "HypothesisViolation",
    "independence_number",
    "independent_transversal",
    "InvalidArgument",
    "InvalidCycle",
    "lift_cycle",
    "link_graph",
    "LinkGraph",
    "longest_mono_tight_cycle",
    "MalformedCycle",
    "min_partition_size",
    "partition",
    "PartitionCertificate",
    "posa_cycle_cover",
    "posa_path_cover",
    "power_lift_back",
    "power_partition",
    "power_reduce",
    "PreconditionViolation",
    "prescribed_length",
    "SearchBudget",
    "SizeLimitError",
    "SubsetFamily",
    "TightCycle",
    "TightCycleError",
    "TightPath",
    "tp",
    "tp_pair",
    "validate_cycle",
    "verify_certificate",
    "VertexPartition",
]
