# distgraph.py
from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from errors import Disconnected
from graphcore import Graph, VertexSet, bfs_layers, bits_of, is_connected


@dataclass(frozen=True)
class DistanceKGraph:
    k: int
    base_n: int
    graph: Graph


def distance_k_graph(g: Graph, k: int) -> DistanceKGraph:
    """G_k: same vertices, x ~ y iff d_G(x, y) == k. Needs a connected g."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not is_connected(g):
        raise Disconnected("distance-k graphs are only defined for connected graphs here")
    rows = []
    for v in range(g.n):
        row = 0
        for depth, layer in enumerate(bfs_layers(g, v)):
            if depth == k:
                row = layer
                break
        rows.append(row)
    return DistanceKGraph(k, g.n, Graph(g.n, tuple(rows)))


def pair_count(dk: DistanceKGraph) -> int:
    return dk.graph.edge_count


def k_degree(dk: DistanceKGraph, v: int) -> int:
    return dk.graph.degree(v)


def k_neighbors(dk: DistanceKGraph, v: int) -> VertexSet:
    return dk.graph.neighbors(v)


def distance_profile(g: Graph) -> Dict[int, int]:
    """e(G_k) for every k that occurs. Values sum to n(n-1)/2 for connected g."""
    if not is_connected(g):
        raise Disconnected("distance profile needs a connected graph")
    twice: Dict[int, int] = {}
    for v in range(g.n):
        for depth, layer in enumerate(bfs_layers(g, v)):
            if depth:
                twice[depth] = twice.get(depth, 0) + layer.bit_count()
    return {k: c // 2 for k, c in sorted(twice.items())}


def g2_rows(g: Graph) -> Tuple[int, ...]:
    """Adjacency rows of G_2 without the connectivity check."""
    rows = []
    for v in range(g.n):
        row = g.adj[v]
        reach = row
        for u in bits_of(row):
            reach |= g.adj[u]
        rows.append(reach & ~row & ~(1 << v))
    return tuple(rows)


def rows_pair_count(rows: Sequence[int]) -> int:
    """Edge count of a graph given by symmetric adjacency rows."""
    return sum(r.bit_count() for r in rows) // 2


def g2_pairs(g: Graph) -> int:
    """e(G_2) straight from the bitset rows; the hot-loop form of pair_count(distance_k_graph(g, 2))."""
    return rows_pair_count(g2_rows(g))


def find_triangle(g: Graph) -> Optional[Tuple[int, int, int]]:
    """Lexicographically smallest (i, j, k), i < j < k, pairwise adjacent."""
    for i in range(g.n):
        for j in bits_of(g.adj[i] >> (i + 1)):
            j += i + 1
            common = (g.adj[i] & g.adj[j]) >> (j + 1)
            if common:
                k = (common & -common).bit_length() - 1 + j + 1
                return (i, j, k)
    return None


def rows_triangle_free(rows: Tuple[int, ...]) -> bool:
    for i, row in enumerate(rows):
        for j in bits_of(row >> (i + 1)):
            if row & rows[i + 1 + j]:
                return False
    return True


# ---------- maximum clique ----------
def _color_classes(adj: Tuple[int, ...], cand: int) -> List[Tuple[int, int]]:
    """Greedy sequential colouring of cand; (vertex, colour) with colours non-decreasing."""
    out = []
    colour = 0
    uncoloured = cand
    while uncoloured:
        colour += 1
        q = uncoloured
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            uncoloured &= ~low
            out.append((v, colour))
    return out


def max_clique(g: Graph) -> VertexSet:
    """Exact maximum clique by branch and bound with colouring bounds. Smallest-first ties are not promised."""
    adj = g.adj
    best = [0, 0]  # size, mask

    def expand(r: int, size: int, cand: int) -> None:
        for v, colour in reversed(_color_classes(adj, cand)):
            if size + colour <= best[0]:
                return
            bit = 1 << v
            nxt = cand & adj[v]
            if nxt:
                expand(r | bit, size + 1, nxt)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, r | bit
            cand &= ~bit

    if g.n:
        expand(0, 0, g.all_mask)
    return VertexSet(best[1])


def clique_number(g: Graph) -> int:
    return len(max_clique(g))
