# test_graphcore.py
from __future__ import annotations
import pickle

import networkx as nx
import numpy as np
import pytest

from enumeration import connected_classes
from errors import BadEdge, CapExceeded, EmptySet
from graphcore import (
    UNREACHABLE, Graph, VertexSet, bfs_distances, canonical_form, canonical_graph,
    canonical_labeling, complete_graph, cycle_graph, diameter, distance_matrix,
    eccentricity, empty_graph, from_adjacency_masks, from_edges, induced_subgraph,
    is_clique, is_connected, is_isomorphic, is_stable, neighborhood_i, path_graph,
    rooted_canonical_form, star_graph,
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def shuffled(g: Graph, seed: int) -> Graph:
    perm = np.random.default_rng(seed).permutation(g.n)
    return g.relabel([int(x) for x in perm])


# ---------- construction ----------
def test_edges_are_sorted_pairs():
    g = from_edges(4, [(3, 1), (0, 2), (1, 0)])
    assert g.edges() == [(0, 1), (0, 2), (1, 3)]
    assert g.edge_count == 3
    assert g.degree(1) == 2
    assert g.neighbors(0).to_list() == [1, 2]
    assert g.check_invariants()


def test_bad_edges_rejected():
    with pytest.raises(BadEdge):
        from_edges(3, [(1, 1)])
    with pytest.raises(BadEdge):
        from_edges(3, [(0, 3)])
    with pytest.raises(BadEdge):
        from_adjacency_masks(2, [0b10, 0b00])


def test_vertex_cap():
    assert empty_graph(64).n == 64
    with pytest.raises(CapExceeded):
        empty_graph(65)
    with pytest.raises(CapExceeded):
        empty_graph(0)


def test_add_and_remove_return_new_values():
    g = path_graph(3)
    h = g.add_edges([(0, 2)])
    assert g.edge_count == 2
    assert h == complete_graph(3)
    assert h.remove_edges([(0, 2)]) == g


def test_complement_and_relabel():
    c5 = cycle_graph(5)
    assert is_isomorphic(c5.complement(), c5)
    g = path_graph(3).relabel([2, 0, 1])
    assert g.edges() == [(0, 1), (0, 2)]


def test_vertex_set_ops():
    a = VertexSet.of([0, 2, 5])
    b = VertexSet.of([2, 3])
    assert (a | b).to_list() == [0, 2, 3, 5]
    assert (a & b).to_list() == [2]
    assert (a - b).to_list() == [0, 5]
    assert len(a) == 3 and 5 in a and 1 not in a


# ---------- distances ----------
def test_path_distances():
    p = path_graph(5)
    assert bfs_distances(p, 0) == (0, 1, 2, 3, 4)
    assert eccentricity(p, 2) == 2
    assert diameter(p) == 4
    assert neighborhood_i(p, 0, 2).to_list() == [2]
    assert neighborhood_i(p, 0, 9).to_list() == []
    with pytest.raises(ValueError):
        neighborhood_i(p, 0, 0)


def test_disconnected_distances():
    g = from_edges(4, [(0, 1), (2, 3)])
    assert not is_connected(g)
    assert diameter(g) is UNREACHABLE
    dm = distance_matrix(g)
    assert dm[0, 1] == 1
    assert dm[0, 2] is UNREACHABLE
    assert dm.has_unreachable()
    assert dm.finite_max() == 1


def test_single_vertex():
    g = empty_graph(1)
    assert is_connected(g)
    assert diameter(g) == 0


def test_unreachable_survives_pickle():
    assert pickle.loads(pickle.dumps(UNREACHABLE)) is UNREACHABLE


def test_distance_matrix_matches_networkx():
    g = from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (2, 6)])
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    dm = distance_matrix(g)
    for i in range(g.n):
        for j in range(g.n):
            assert dm[i, j] == ref[i][j]


# ---------- subsets ----------
def test_clique_and_stable():
    c5 = cycle_graph(5)
    assert is_clique(c5, [0, 1])
    assert not is_clique(c5, [0, 1, 2])
    assert is_stable(c5, VertexSet.of([0, 2]))
    assert is_clique(c5, 0) and is_stable(c5, 0)


def test_induced_subgraph():
    g = induced_subgraph(cycle_graph(6), [1, 2, 3, 5])
    assert g.n == 4
    assert g.edges() == [(0, 1), (1, 2)]
    with pytest.raises(EmptySet):
        induced_subgraph(cycle_graph(6), [])


# ---------- canonical form ----------
@pytest.mark.parametrize("g", [
    cycle_graph(6),
    star_graph(4),
    from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6)]),
    complete_graph(5).remove_edges([(0, 1), (2, 3)]),
    from_edges(8, [(i, j) for i in range(4) for j in range(4, 8)]),
])
def test_canonical_form_is_label_invariant(g):
    form = canonical_form(g)
    for seed in range(100):
        assert canonical_form(shuffled(g, seed)) == form
    assert canonical_graph(shuffled(g, 11)) == canonical_graph(g)


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8])
def test_canonical_form_survives_relabeling_across_classes(n):
    classes = connected_classes(n)
    for g in classes[:: max(1, len(classes) // 60)]:
        form = canonical_form(g)
        for seed in range(100):
            assert canonical_form(shuffled(g, seed)) == form


def test_canonical_labeling_orders_every_vertex():
    g = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)])
    order, _ = canonical_labeling(g)
    assert sorted(order) == list(range(5))


def test_isomorphism_agrees_with_networkx():
    graphs = [
        path_graph(5), cycle_graph(5), star_graph(4),
        from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
        from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (0, 4)]),
        from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]),
        from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 4)]),
    ]
    for a in graphs:
        for b in graphs:
            b = shuffled(b, 3)
            assert is_isomorphic(a, b) == nx.is_isomorphic(to_nx(a), to_nx(b))


def test_rooted_form_separates_orbits():
    p = path_graph(4)
    assert rooted_canonical_form(p, 0) == rooted_canonical_form(p, 3)
    assert rooted_canonical_form(p, 1) == rooted_canonical_form(p, 2)
    assert rooted_canonical_form(p, 0) != rooted_canonical_form(p, 1)
    star = star_graph(3)
    assert len({rooted_canonical_form(star, v) for v in range(4)}) == 2
