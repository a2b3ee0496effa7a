import json

import pytest

from stpart.constructions import min_element_coloring, remark_coloring
from stpart.errors import ImproperColoringError, InvalidPartitionError, ParameterError
from stpart.graphs import KSubset, SimpleGraph, complete_graph, k_subsets
from stpart.model import (
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
    constant_coloring,
    count_non_star_shaped,
    is_proper_coloring,
    is_star_shaped,
    part_from_edges,
    partition_to_coloring,
    validate_partition,
)


def S(*xs):
    return KSubset(xs)


K4_OPT = STPartition(complete_graph(4), (Triangle((1, 2, 3)), Star(4, (1, 2, 3))))


def test_part_invariants():
    with pytest.raises(ParameterError):
        Star(1, ())
    with pytest.raises(ParameterError):
        Star(1, (1, 2))
    with pytest.raises(ParameterError):
        Triangle((1, 2, 2))
    assert Star(2, (5, 1)).leaves == (1, 5)
    assert Triangle((3, 1, 2)).edges() == ((1, 2), (1, 3), (2, 3))


def test_part_from_edges():
    assert part_from_edges([(1, 2)]) == Star(1, (2,))
    assert part_from_edges([(1, 3), (2, 3)]) == Star(3, (1, 2))
    assert part_from_edges([(1, 2), (1, 3), (2, 3)]) == Triangle((1, 2, 3))
    assert part_from_edges([(1, 2), (3, 4)]) is None


def test_validate_partition_examples():
    k3 = complete_graph(3)
    assert validate_partition(STPartition(k3, (Triangle((1, 2, 3)),))).ok
    rep = validate_partition(STPartition(k3, (Star(1, (2, 3)),)))
    assert rep.uncovered == [(2, 3)] and not rep.doubly_covered
    rep = validate_partition(STPartition(k3, (Triangle((1, 2, 3)), Star(1, (2,)))))
    assert rep.doubly_covered == [(1, 2)] and not rep.uncovered


def test_validate_partition_outside_host():
    path = SimpleGraph.from_pairs(3, [(1, 2), (2, 3)])
    rep = validate_partition(STPartition(path, (Triangle((1, 2, 3)),)))
    assert rep.outside_host == [(1, 3)]
    assert "outside host" in rep.describe()


def test_classify_class_examples():
    assert classify_class([S(1, 2), S(1, 3), S(1, 4)]) == StarShaped(frozenset({1}))
    assert classify_class([S(1, 2), S(1, 3), S(2, 3)]) == TriangleClass((1, 2, 3))
    assert isinstance(classify_class([S(1, 2), S(3, 4)]), NotIntersecting)
    assert classify_class([S(2, 7)]) == StarShaped(frozenset({2, 7}))
    # two sides of a triangle are a star
    assert classify_class([S(1, 2), S(1, 3)]) == StarShaped(frozenset({1}))
    with pytest.raises(ParameterError):
        classify_class([])


def test_is_star_shaped_examples():
    assert is_star_shaped([S(1, 2, 3), S(1, 4, 5)])
    assert not is_star_shaped([S(1, 2), S(1, 3), S(2, 3)])
    assert is_star_shaped([S(2, 7)])
    with pytest.raises(ParameterError):
        is_star_shaped([])


def test_coloring_to_partition_examples():
    pairs = {S(1, 2): 1, S(1, 3): 1, S(2, 3): 1, S(1, 4): 2, S(2, 4): 2, S(3, 4): 2}
    p = coloring_to_partition(Coloring(4, 2, pairs))
    assert p.parts == (Triangle((1, 2, 3)), Star(4, (1, 2, 3)))
    assert validate_partition(p).ok
    p = coloring_to_partition(Coloring(2, 2, {S(1, 2): 1}))
    assert p.parts == (Star(1, (2,)),)


def test_coloring_to_partition_remark6():
    p = coloring_to_partition(remark_coloring(6))
    assert p.triangles == [Triangle((1, 2, 3))]
    assert sorted(s.center for s in p.stars) == [4, 5, 6]
    assert p.size == 4


def test_coloring_to_partition_improper():
    with pytest.raises(ImproperColoringError) as info:
        coloring_to_partition(constant_coloring(5, 2))
    assert info.value.pair == (S(1, 2), S(3, 4))
    with pytest.raises(ParameterError):
        coloring_to_partition(min_element_coloring(5, 3))


def test_partition_to_coloring_examples():
    c = partition_to_coloring(STPartition(complete_graph(3), (Triangle((1, 2, 3)),)))
    assert set(c.colors.values()) == {1} and is_proper_coloring(c)
    c = partition_to_coloring(K4_OPT)
    assert c.num_colors == 2 and is_proper_coloring(c)
    assert c.colors[S(1, 2)] == 1 and c.colors[S(3, 4)] == 2


def test_partition_to_coloring_rejects_invalid():
    bad = STPartition(complete_graph(3), (Star(1, (2, 3)),))
    with pytest.raises(InvalidPartitionError) as info:
        partition_to_coloring(bad)
    assert info.value.report.uncovered == [(2, 3)]
    with pytest.raises(ParameterError):
        partition_to_coloring(STPartition(SimpleGraph.from_pairs(3, [(1, 2)]), (Star(1, (2,)),)))


def test_is_proper_coloring_examples():
    check = is_proper_coloring(constant_coloring(5, 2))
    assert not check and check.witness == (S(1, 2), S(3, 4))
    assert is_proper_coloring(min_element_coloring(6, 2))
    assert min_element_coloring(6, 2).num_colors == 5
    assert is_proper_coloring(remark_coloring(7))


def test_is_proper_coloring_partial():
    with pytest.raises(ParameterError):
        is_proper_coloring(Coloring(4, 2, {S(1, 2): 1}))


def test_count_non_star_shaped_examples(optimal_kn):
    for p in optimal_kn(6):
        assert count_non_star_shaped(partition_to_coloring(p)) == 1
    assert count_non_star_shaped(min_element_coloring(6, 2)) == 0
    assert count_non_star_shaped(remark_coloring(8)) == 1
    with pytest.raises(ImproperColoringError):
        count_non_star_shaped(constant_coloring(5, 2))


def test_normalization():
    c = Coloring(3, 2, {S(1, 2): 9, S(1, 3): 9, S(2, 3): 4})
    assert c.normalized().colors == {S(1, 2): 1, S(1, 3): 1, S(2, 3): 2}
    assert remark_coloring(6).normalized().colors == remark_coloring(6).colors


def test_lemma_min_tri_examples():
    assert check_lemma_min_tri(K4_OPT) == []
    p = STPartition(complete_graph(5), (
        Triangle((1, 2, 3)), Star(1, (4, 5)), Star(2, (4, 5)), Star(4, (5,)), Star(3, (4, 5)),
    ))
    assert validate_partition(p).ok
    viol = check_lemma_min_tri(p)
    assert len(viol) == 1
    assert viol[0].triangle == Triangle((1, 2, 3)) and viol[0].centers == (1, 2, 3)


def test_lemma_min_tri1_examples():
    assert check_lemma_min_tri1(K4_OPT) == []
    p = STPartition(complete_graph(4), (Triangle((1, 2, 3)), Star(1, (4,)), Star(2, (4,)), Star(3, (4,))))
    assert validate_partition(p).ok
    viol = check_lemma_min_tri1(p)
    assert [(v.vertex, v.triangle) for v in viol] == [(4, Triangle((1, 2, 3)))]


def test_lemma_min_tri1_uses_host_adjacency():
    # 4 sees only one triangle vertex, so it need not be a center
    h = SimpleGraph.from_pairs(4, [(1, 2), (1, 3), (2, 3), (3, 4)])
    p = STPartition(h, (Triangle((1, 2, 3)), Star(3, (4,))))
    assert check_lemma_min_tri1(p) == []


def test_serialization_roundtrip():
    doc = json.loads(K4_OPT.dumps())
    assert doc == {"n": 4, "parts": [{"type": "triangle", "vertices": [1, 2, 3]},
                                     {"type": "star", "center": 4, "leaves": [1, 2, 3]}]}
    assert STPartition.from_json(doc) == K4_OPT
    h = SimpleGraph.from_pairs(3, [(1, 2), (2, 3)])
    p = STPartition(h, (Star(2, (1, 3)),))
    assert STPartition.from_json(json.loads(p.dumps())) == p
    c = remark_coloring(5)
    doc = json.loads(c.dumps())
    assert doc["colors"]["1,2"] == 1 and doc["k"] == 2
    assert Coloring.from_json(doc).colors == c.colors


@pytest.mark.parametrize("n", range(3, 8))
def test_round_trip_on_all_optimal(n, optimal_kn):
    for p in optimal_kn(n):
        back = coloring_to_partition(partition_to_coloring(p))
        assert back.edge_multiset() == p.edge_multiset()


def test_every_proper_class_is_star_or_triangle(optimal_kn):
    for p in optimal_kn(6):
        c = partition_to_coloring(p)
        kinds = [classify_class(m) for m in c.classes.values()]
        assert not any(isinstance(k, NotIntersecting) for k in kinds)
        assert count_non_star_shaped(c) == sum(isinstance(k, TriangleClass) for k in kinds)


def test_k_subsets_coloring_keys_cover_descriptor():
    c = remark_coloring(6)
    assert sorted(c.colors) == k_subsets(6, 2)
