"""Exact search and verification for optimal colorings of KG(n, 2) viewed
as star/triangle partitions of the edges of K_n."""

from .constructions import (
    MultipartiteWitness,
    extract_colorful_bipartite,
    extract_colorful_tripartite,
    no_colorful_cycle_certificate,
    remark_coloring,
    standard_optimal_coloring,
    verify_colorful_multipartite,
)
from .errors import ImproperColoringError, InvalidPartitionError, ParameterError, Undetermined
from .graphs import (
    KneserDescriptor,
    KSubset,
    SimpleGraph,
    complement_of_line_graph,
    complete_graph,
    k_subsets,
    kneser_adjacent,
)
from .model import (
    Coloring,
    NotIntersecting,
    Star,
    StarShaped,
    STPartition,
    Triangle,
    TriangleClass,
    check_lemma_min_tri,
    check_lemma_min_tri1,
    classify_class,
    coloring_to_partition,
    count_non_star_shaped,
    is_proper_coloring,
    is_star_shaped,
    partition_to_coloring,
    validate_partition,
)
from .search import (
    SearchBudget,
    enumerate_st_partitions,
    exact_chromatic_number,
    min_st_partition_size,
    min_star_partition_size,
    search_colorful_multipartite,
    verify_case_subgoals,
    verify_theorem,
)

__version__ = "0.1.0"
