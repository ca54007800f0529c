# test_distgraph.py
from __future__ import annotations

import networkx as nx
import pytest

from distgraph import (
    clique_number, distance_k_graph, distance_profile, find_triangle, g2_pairs,
    g2_rows, k_degree, k_neighbors, max_clique, pair_count, rows_pair_count, rows_triangle_free,
)
from enumeration import connected_classes
from errors import Disconnected
from graphcore import (
    Graph, complete_graph, cycle_graph, from_edges, is_clique, path_graph, star_graph,
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_path_distance_graphs():
    p4 = path_graph(4)
    g2 = distance_k_graph(p4, 2)
    assert g2.graph.edges() == [(0, 2), (1, 3)]
    assert pair_count(g2) == 2
    assert k_degree(g2, 0) == 1
    assert k_neighbors(g2, 1).to_list() == [3]
    assert distance_k_graph(p4, 3).graph.edges() == [(0, 3)]
    assert pair_count(distance_k_graph(p4, 7)) == 0


def test_k_one_is_the_graph():
    c = cycle_graph(7)
    assert distance_k_graph(c, 1).graph == c


def test_distance_graph_errors():
    with pytest.raises(ValueError):
        distance_k_graph(path_graph(3), 0)
    with pytest.raises(Disconnected):
        distance_k_graph(from_edges(4, [(0, 1), (2, 3)]), 2)


def test_distance_profile_partitions_pairs():
    assert distance_profile(cycle_graph(6)) == {1: 6, 2: 6, 3: 3}
    for g in connected_classes(5):
        assert sum(distance_profile(g).values()) == 10


def test_fast_g2_matches_definition():
    for g in connected_classes(5):
        ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        expected = sum(1 for i in range(g.n) for j in range(i + 1, g.n) if ref[i][j] == 2)
        assert g2_pairs(g) == expected == pair_count(distance_k_graph(g, 2))
        assert Graph(g.n, g2_rows(g)) == distance_k_graph(g, 2).graph
        assert rows_pair_count(g2_rows(g)) == g2_pairs(g)
        assert rows_pair_count(g.adj) == g.edge_count


def test_triangles():
    assert find_triangle(complete_graph(4)) == (0, 1, 2)
    assert find_triangle(cycle_graph(5)) is None
    g = from_edges(5, [(0, 1), (1, 4), (2, 3), (3, 4), (2, 4)])
    assert find_triangle(g) == (2, 3, 4)
    # claw: the three leaves are pairwise at distance two
    assert not rows_triangle_free(g2_rows(star_graph(3)))
    assert rows_triangle_free(g2_rows(cycle_graph(5)))


def test_max_clique():
    assert clique_number(cycle_graph(5)) == 2
    assert clique_number(complete_graph(6)) == 6
    g = cycle_graph(7).add_edges([(0, 2), (0, 3), (2, 4)])
    k = max_clique(g)
    assert is_clique(g, k)
    assert len(k) == max(len(c) for c in nx.find_cliques(to_nx(g)))


def test_max_clique_matches_networkx_on_small_classes():
    for g in connected_classes(6):
        assert clique_number(g) == max(len(c) for c in nx.find_cliques(to_nx(g)))
