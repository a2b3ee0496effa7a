from math import comb

import pytest

from oracles import colorful_multipartite_exists, partitions_by_assignment, vertex_cover_number
from stpart.constructions import remark_coloring, standard_optimal_coloring, verify_colorful_multipartite
from stpart.errors import ParameterError, Undetermined
from stpart.graphs import SimpleGraph, complement_of_line_graph, complete_graph, k_subsets, kneser_graph
from stpart.model import STPartition, Triangle, partition_to_coloring, validate_partition
from stpart.search import (
    SearchBudget,
    enumerate_st_partitions,
    exact_chromatic_number,
    integer_solutions_of_all_triangle_count,
    min_st_partition_size,
    min_star_partition_size,
    search_colorful_multipartite,
    verify_case_subgoals,
    verify_theorem,
)


def edge_sets(partitions):
    return {frozenset(frozenset(tuple(e) for e in part.edges()) for part in p.parts) for p in partitions}


def test_enumerate_k3_single_triangle():
    ps = list(enumerate_st_partitions(complete_graph(3), 1))
    assert [p.parts for p in ps] == [(Triangle((1, 2, 3)),)]


def test_enumerate_k4_two_parts_matches_oracle():
    en = enumerate_st_partitions(complete_graph(4), 2)
    ps = list(en)
    oracle = partitions_by_assignment(complete_graph(4).edges, 2)
    assert len(oracle) == 4
    assert edge_sets(ps) == oracle and len(ps) == 4
    for p in ps:
        (tri,) = p.triangles
        (star,) = p.stars
        assert star.center not in tri.vertices
    assert en.report.exhausted and en.report.triangle_histogram == {1: 4}


@pytest.mark.parametrize("n,sizes", [(4, range(0, 8)), (5, range(1, 4))])
def test_enumerate_matches_oracle_on_complete_graphs(n, sizes):
    h = complete_graph(n)
    for s in sizes:
        ps = list(enumerate_st_partitions(h, s))
        assert len(edge_sets(ps)) == len(ps)
        assert edge_sets(ps) == partitions_by_assignment(h.edges, s)


def test_enumerate_k6_four_parts_one_triangle():
    en = enumerate_st_partitions(complete_graph(6), 4)
    ps = list(en)
    assert en.report.triangle_histogram.keys() == {1}
    assert en.report.partitions_found == len(ps)


@pytest.mark.parametrize("n", range(3, 9))
def test_optimal_count_closed_form(n, optimal_kn):
    """An optimal partition of K_n is a triangle plus one star per outside
    vertex; the stars amount to orienting the K_{n-3} on the outside."""
    assert len(optimal_kn(n)) == comb(n, 3) * 2 ** comb(n - 3, 2)


def test_emitted_partitions_are_valid_and_distinct():
    h = SimpleGraph.from_pairs(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5), (2, 4)])
    for s in range(1, h.num_edges + 1):
        ps = list(enumerate_st_partitions(h, s))
        assert all(validate_partition(p).ok and p.size == s for p in ps)
        assert len(edge_sets(ps)) == len(ps)


def test_enumerate_empty_host():
    h = SimpleGraph(3, ())
    assert [p.parts for p in enumerate_st_partitions(h, 0)] == [()]
    assert list(enumerate_st_partitions(h, 1)) == []


def test_enumerate_infeasible_sizes():
    assert list(enumerate_st_partitions(complete_graph(5), 2)) == []
    assert list(enumerate_st_partitions(complete_graph(5), 11)) == []
    with pytest.raises(ParameterError):
        enumerate_st_partitions(complete_graph(5), -1)


def test_enumerate_budget_fires():
    en = enumerate_st_partitions(complete_graph(7), 5, SearchBudget(node_limit=50))
    ps = list(en)
    assert not en.report.exhausted
    assert en.report.partitions_found == len(ps) < 2240
    en = enumerate_st_partitions(complete_graph(5), 4, SearchBudget(max_parts=3))
    assert list(en) == [] and not en.report.exhausted


def test_enumeration_is_deterministic():
    a = [p.dumps() for p in enumerate_st_partitions(complete_graph(6), 5)]
    b = [p.dumps() for p in enumerate_st_partitions(complete_graph(6), 5)]
    assert a == b


@pytest.mark.parametrize("n,s", [(6, 4), (5, 5)])
def test_parallel_matches_serial(n, s):
    serial_en = enumerate_st_partitions(complete_graph(n), s)
    serial = [p.dumps() for p in serial_en]
    par_en = enumerate_st_partitions(complete_graph(n), s, workers=2)
    par = [p.dumps() for p in par_en]
    assert par == serial
    assert par_en.report.partitions_found == serial_en.report.partitions_found
    assert par_en.report.triangle_histogram == serial_en.report.triangle_histogram
    assert par_en.report.exhausted


def test_min_sizes():
    assert min_st_partition_size(complete_graph(5)) == 3
    assert min_st_partition_size(complete_graph(6)) == 4
    assert min_st_partition_size(complete_graph(3)) == 1
    assert min_star_partition_size(complete_graph(4)) == 3
    assert min_star_partition_size(complete_graph(6)) == 5
    assert min_star_partition_size(complete_graph(2)) == 1


def test_min_sizes_errors():
    with pytest.raises(ParameterError):
        min_st_partition_size(SimpleGraph(3, ()))
    with pytest.raises(Undetermined):
        min_st_partition_size(complete_graph(8), SearchBudget(node_limit=5))
    with pytest.raises(Undetermined):
        min_st_partition_size(complete_graph(8), SearchBudget(max_parts=5))


def test_min_star_equals_vertex_cover_on_small_graphs():
    graphs = [
        SimpleGraph.from_pairs(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]),
        SimpleGraph.from_pairs(6, [(1, 2), (3, 4), (5, 6)]),
        SimpleGraph.from_pairs(6, [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]),
        complete_graph(7),
    ]
    for g in graphs:
        assert min_star_partition_size(g) == vertex_cover_number(g.n, g.edges)


@pytest.mark.parametrize("n", range(4, 9))
def test_star_only_strictly_worse(n):
    assert min_star_partition_size(complete_graph(n)) == min_st_partition_size(complete_graph(n)) + 1


def test_verify_theorem_examples():
    v3, v4, v5, v6 = verify_theorem(3, 6)
    assert (v3.min_size, v3.triangle_histogram, v3.status) == (1, {1: 1}, "pass")
    assert (v4.min_size, v4.triangle_histogram) == (2, {1: 4})
    assert v6.min_size == 4 and set(v6.triangle_histogram) == {1}
    with pytest.raises(ParameterError):
        verify_theorem(2, 4)


def test_verify_theorem_inconclusive():
    (v,) = verify_theorem(7, 7, SearchBudget(node_limit=10))
    assert v.status == "inconclusive"


def test_case_subgoals():
    verdicts = verify_case_subgoals()
    assert [v.name for v in verdicts] == ["disjoint-triangles-K6", "vertex-sharing-triangles-K5",
                                          "all-triangle-count"]
    assert all(v.holds for v in verdicts)
    assert integer_solutions_of_all_triangle_count() == [3, 4]


# -- colorful multipartite search ---------------------------------------------


def test_search_remark7_examples():
    c = remark_coloring(7)
    assert search_colorful_multipartite(c, [1, 2, 2]) is None
    w = search_colorful_multipartite(c, [1, 1, 2])
    assert w is not None and w.sizes == (1, 1, 2)
    assert verify_colorful_multipartite(c, w)


def test_search_agrees_with_extractor_on_k6(optimal_kn):
    p = optimal_kn(6)[0]
    c = partition_to_coloring(p)
    w = search_colorful_multipartite(c, [2, 2])
    assert w is not None and verify_colorful_multipartite(c, w)


@pytest.mark.parametrize("sizes", [[1, 1, 1], [1, 1, 2], [2, 1, 1], [1, 2], [2, 2], [1, 3]])
def test_search_matches_brute_force_remark6(sizes):
    c = remark_coloring(6)
    pairs = k_subsets(6, 2)
    found = search_colorful_multipartite(c, sizes)
    assert (found is not None) == colorful_multipartite_exists(pairs, c.colors, sizes)


def test_search_matches_brute_force_on_optimal_k6(optimal_kn):
    pairs = k_subsets(6, 2)
    for p in optimal_kn(6)[::20]:
        c = partition_to_coloring(p)
        for sizes in ([1, 1, 2], [2, 2], [1, 1, 1]):
            found = search_colorful_multipartite(c, sizes)
            assert (found is not None) == colorful_multipartite_exists(pairs, c.colors, sizes)


def test_search_preconditions():
    c = remark_coloring(6)
    with pytest.raises(ParameterError):
        search_colorful_multipartite(c, [0, 2])
    with pytest.raises(ParameterError):
        search_colorful_multipartite(c, [3, 2])
    with pytest.raises(Undetermined):
        search_colorful_multipartite(remark_coloring(9), [3, 2, 2], SearchBudget(node_limit=3))


# -- chromatic number ---------------------------------------------------------


def test_chromatic_examples():
    assert exact_chromatic_number(complement_of_line_graph(complete_graph(5))) == 3
    assert exact_chromatic_number(complete_graph(7)) == 7
    assert exact_chromatic_number(complement_of_line_graph(complete_graph(7))) == 5


def test_chromatic_small_cases():
    assert exact_chromatic_number(SimpleGraph(4, ())) == 1
    c5 = SimpleGraph.from_pairs(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    assert exact_chromatic_number(c5) == 3
    with pytest.raises(ParameterError):
        exact_chromatic_number(SimpleGraph(0, ()))


@pytest.mark.parametrize("n,k", [(7, 3), (6, 3), (8, 3), (5, 1)])
def test_chromatic_kneser_general_k(n, k):
    _, g = kneser_graph(n, k)
    assert exact_chromatic_number(g) == n - 2 * k + 2


def test_chromatic_budget():
    # clique bound 3 < greedy bound, so branching is needed
    with pytest.raises(Undetermined):
        exact_chromatic_number(kneser_graph(7, 2)[1], SearchBudget(node_limit=1))


def test_standard_coloring_partition_is_optimal():
    from stpart.model import coloring_to_partition

    p = coloring_to_partition(standard_optimal_coloring(7, 2))
    assert p.size == min_st_partition_size(complete_graph(7))
    assert isinstance(p, STPartition)
