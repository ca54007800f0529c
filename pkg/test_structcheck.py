# test_structcheck.py
from __future__ import annotations

import pytest

from errors import HypothesisFailed
from graphcore import (
    VertexSet, complete_graph, cycle_graph, from_edges, is_stable, path_graph, star_graph,
)
from structcheck import (
    C6_VARIANTS, CliqueCover2, Pattern, VertexTag, check_lemma_2_2,
    check_observation_2_1, cover_is_valid, find_c5_in_neighborhood, find_induced_c6_variant,
    find_induced_claw, find_stable_set, is_quasi_line, second_neighborhood_partition,
    stability_number, theorem_hypothesis_holds, two_clique_cover,
)


def wheel(rim: int):
    """Cycle 0..rim-1 plus hub `rim` joined to every rim vertex."""
    return from_edges(rim + 1, [(i, (i + 1) % rim) for i in range(rim)] + [(rim, i) for i in range(rim)])


def test_claw():
    hit = find_induced_claw(star_graph(3))
    assert hit.pattern is Pattern.CLAW
    assert hit.vertices == (0, 1, 2, 3)
    assert find_induced_claw(cycle_graph(6)) is None
    assert find_induced_claw(complete_graph(5)) is None


def test_c6_variants():
    c6 = cycle_graph(6)
    hit = find_induced_c6_variant(c6, Pattern.C6)
    assert hit.vertices == (0, 1, 2, 3, 4, 5)
    c6p = c6.add_edges([(0, 2)])
    assert find_induced_c6_variant(c6p, Pattern.C6) is None
    assert find_induced_c6_variant(c6p, Pattern.C6P) is not None
    c6pp = c6p.add_edges([(2, 4)])
    assert find_induced_c6_variant(c6pp, Pattern.C6PP) is not None
    assert find_induced_c6_variant(c6pp, Pattern.C6P) is None
    assert find_induced_c6_variant(path_graph(5), Pattern.C6) is None
    with pytest.raises(ValueError):
        find_induced_c6_variant(c6, Pattern.CLAW)


def test_c6_inside_larger_graph_is_found():
    g = from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (0, 1)])
    hit = find_induced_c6_variant(g, Pattern.C6)
    assert hit is not None and 0 not in hit.vertices
    for variant in C6_VARIANTS[1:]:
        assert find_induced_c6_variant(g, variant) is None


def test_two_clique_cover():
    cover = two_clique_cover(cycle_graph(5), 0)
    assert cover.to_dict() == {"a": [1], "b": [4]}
    assert cover_is_valid(cycle_graph(5), 0, cover)
    whole = two_clique_cover(complete_graph(4), 0)
    assert whole.a.to_list() == [1, 2, 3] and whole.b.to_list() == []
    assert two_clique_cover(star_graph(3), 0) is None
    assert not cover_is_valid(cycle_graph(5), 0, CliqueCover2(VertexSet.of([1, 4]), VertexSet(0)))


def test_c5_neighbourhood():
    w = wheel(5)
    hit = find_c5_in_neighborhood(w, 5)
    assert hit.pattern is Pattern.C5_IN_NBHD
    assert sorted(hit.vertices) == [0, 1, 2, 3, 4]
    assert two_clique_cover(w, 5) is None
    assert find_c5_in_neighborhood(w, 0) is None


def test_hypothesis_and_quasi_line():
    assert theorem_hypothesis_holds(cycle_graph(5)) == 0
    assert is_quasi_line(cycle_graph(5))
    assert theorem_hypothesis_holds(wheel(5)) == 0
    assert not is_quasi_line(wheel(5))
    assert theorem_hypothesis_holds(star_graph(3)) == 1
    assert not is_quasi_line(star_graph(3))


def test_stability():
    assert stability_number(cycle_graph(5)) == 2
    assert stability_number(cycle_graph(6)) == 3
    s = find_stable_set(cycle_graph(7))
    assert len(s) == 3 and is_stable(cycle_graph(7), s)


def test_lemma_2_2_tags():
    rep = check_lemma_2_2(cycle_graph(6))
    assert rep.tags == (VertexTag.TWO_CLIQUES,) * 6
    assert rep.violations == [] and rep.both == []
    with pytest.raises(HypothesisFailed):
        check_lemma_2_2(star_graph(3))
    with pytest.raises(HypothesisFailed):
        check_lemma_2_2(cycle_graph(5))  # alpha = 2


def test_lemma_2_2_c5_neighbourhood_tag():
    g = from_edges(8, [(i, (i + 1) % 5) for i in range(5)] + [(5, i) for i in range(5)]
                   + [(0, 6), (1, 6), (2, 7), (3, 7)])
    assert find_induced_claw(g) is None
    assert stability_number(g) >= 3
    rep = check_lemma_2_2(g)
    assert rep.tags[5] is VertexTag.C5_NBHD
    assert rep.violations == []


def test_observation_2_1():
    assert check_observation_2_1(cycle_graph(5)) is None
    with pytest.raises(HypothesisFailed):
        check_observation_2_1(path_graph(4))
    with pytest.raises(HypothesisFailed):
        check_observation_2_1(star_graph(3))


def test_second_neighbourhood_partition():
    c5 = cycle_graph(5)
    split = second_neighborhood_partition(c5, 0, two_clique_cover(c5, 0))
    assert split.a.to_list() == [2]
    assert split.c.to_list() == [3]
    assert split.b.to_list() == []
    assert split.claims_hold
