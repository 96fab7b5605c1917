"""Exact and Monte Carlo tools for chi-boundedness of almost all H-free graphs."""

from .census import CensusRecord, enumerate_graphs
from .families import (
    FamilyClass,
    contains_induced,
    family_count,
    find_induced,
    is_member,
)
from .graph import Graph
from .invariants import (
    Coloring,
    chromatic_number,
    clique_number,
    girth,
    is_perfect,
    pair_coloring,
)
from .merge import (
    AuxiliaryBigraph,
    MergeOutcome,
    build_auxiliary,
    merge_all,
    merge_pair,
    perfect_matching,
    union_coloring,
)
from .partitions import (
    Certificate,
    PartitionShape,
    VertexPartition,
    known_certificates,
    wpn,
)
from .sampling import (
    Pattern,
    eqi_partition,
    extend_pattern,
    sample_girth5,
    sample_member,
    sample_pattern,
)

__version__ = "0.1.0"

__all__ = [
    "AuxiliaryBigraph", "CensusRecord", "Certificate", "Coloring", "FamilyClass", "Graph",
    "MergeOutcome", "PartitionShape", "Pattern", "VertexPartition", "build_auxiliary",
    "chromatic_number", "clique_number", "contains_induced", "enumerate_graphs", "eqi_partition",
    "extend_pattern", "family_count", "find_induced", "girth", "is_member", "is_perfect",
    "known_certificates", "merge_all", "merge_pair", "pair_coloring", "perfect_matching",
    "sample_girth5", "sample_member", "sample_pattern", "union_coloring", "wpn",
]
