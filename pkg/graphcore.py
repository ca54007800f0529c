# graphcore.py
"""
Small undirected simple graphs as bitset rows.

Vertex i's row is an int whose bit j is set iff {i, j} is an edge, so a
vertex subset is a single int as well (wrapped as VertexSet at the API
boundary). Everything here is an immutable value.
"""
from __future__ import annotations
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from config import VERTEX_CAP
from errors import BadEdge, CapExceeded, EmptySet


class _Unreachable:
    """Distance sentinel for vertex pairs with no path. Never compares with ints."""
    _instance: Optional["_Unreachable"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


UNREACHABLE = _Unreachable()

Distance = Union[int, _Unreachable]


def bits_of(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------- value types ----------
@dataclass(frozen=True)
class VertexSet:
    bits: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        return cls(mask_of(vertices))

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool(self.bits >> v & 1)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & ~other.bits)

    def to_list(self) -> List[int]:
        return list(bits_of(self.bits))


SetLike = Union[VertexSet, int, Iterable[int]]


def _as_mask(s: SetLike) -> int:
    if isinstance(s, VertexSet):
        return s.bits
    if isinstance(s, int):
        return s
    return mask_of(s)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: Tuple[int, ...]

    @cached_property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.adj[v])

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as (i, j) with i < j, sorted."""
        out = []
        for i in range(self.n):
            for j in bits_of(self.adj[i] >> (i + 1)):
                out.append((i, i + 1 + j))
        return out

    def complement(self) -> "Graph":
        full = self.all_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(self.adj)))

    def relabel(self, mapping: Sequence[int]) -> "Graph":
        """mapping[v] is the new index of old vertex v."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            nv = mapping[v]
            for u in bits_of(row):
                rows[nv] |= 1 << mapping[u]
        return Graph(self.n, tuple(rows))

    def add_edges(self, pairs: Iterable[Tuple[int, int]]) -> "Graph":
        rows = list(self.adj)
        for i, j in pairs:
            _check_pair(self.n, i, j)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return Graph(self.n, tuple(rows))

    def remove_edges(self, pairs: Iterable[Tuple[int, int]]) -> "Graph":
        rows = list(self.adj)
        for i, j in pairs:
            rows[i] &= ~(1 << j)
            rows[j] &= ~(1 << i)
        return Graph(self.n, tuple(rows))

    def check_invariants(self) -> bool:
        if len(self.adj) != self.n:
            return False
        full = self.all_mask
        for i, row in enumerate(self.adj):
            if row & ~full or row >> i & 1:
                return False
            for j in bits_of(row):
                if not self.adj[j] >> i & 1:
                    return False
        return True


@dataclass(frozen=True)
class DistanceMatrix:
    n: int
    d: Tuple[Tuple[Distance, ...], ...]

    def __getitem__(self, ij: Tuple[int, int]) -> Distance:
        i, j = ij
        return self.d[i][j]

    def finite_max(self) -> int:
        return max((x for row in self.d for x in row if x is not UNREACHABLE), default=0)

    def has_unreachable(self) -> bool:
        return any(x is UNREACHABLE for row in self.d for x in row)


@dataclass(frozen=True, order=True)
class CanonicalForm:
    code: bytes

    def hex(self) -> str:
        return self.code.hex()


# ---------- construction ----------
def _check_pair(n: int, i: int, j: int) -> None:
    if not (0 <= i < n and 0 <= j < n):
        raise BadEdge(f"edge ({i}, {j}) has an endpoint outside 0..{n - 1}")
    if i == j:
        raise BadEdge(f"self-loop at {i}")


def empty_graph(n: int) -> Graph:
    if n > VERTEX_CAP:
        raise CapExceeded(f"n={n} exceeds the {VERTEX_CAP}-vertex cap")
    if n < 1:
        raise CapExceeded(f"n={n}: graphs need at least one vertex")
    return Graph(n, (0,) * n)


def from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> Graph:
    return empty_graph(n).add_edges(edges)


def from_adjacency_masks(n: int, rows: Sequence[int]) -> Graph:
    g = Graph(n, tuple(rows))
    if n > VERTEX_CAP:
        raise CapExceeded(f"n={n} exceeds the {VERTEX_CAP}-vertex cap")
    if not g.check_invariants():
        raise BadEdge("adjacency rows are not a simple undirected graph")
    return g


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# ---------- distances ----------
def bfs_layers(g: Graph, v: int) -> Iterator[int]:
    """BFS frontiers from v as masks: {v}, N(v), N^2(v), ..."""
    seen = frontier = 1 << v
    while frontier:
        yield frontier
        nxt = 0
        for u in bits_of(frontier):
            nxt |= g.adj[u]
        frontier = nxt & ~seen
        seen |= frontier


def bfs_distances(g: Graph, v: int) -> Tuple[Distance, ...]:
    row: List[Distance] = [UNREACHABLE] * g.n
    for depth, layer in enumerate(bfs_layers(g, v)):
        for u in bits_of(layer):
            row[u] = depth
    return tuple(row)


def distance_matrix(g: Graph) -> DistanceMatrix:
    return DistanceMatrix(g.n, tuple(bfs_distances(g, v) for v in range(g.n)))


def reachable_mask(g: Graph, v: int, within: Optional[int] = None) -> int:
    """Vertices reachable from v, optionally moving only inside `within`."""
    allowed = g.all_mask if within is None else within
    seen = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in bits_of(frontier):
            nxt |= g.adj[u]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return reachable_mask(g, 0) == g.all_mask


def eccentricity(g: Graph, v: int) -> Distance:
    depth = -1
    seen = 0
    for depth, layer in enumerate(bfs_layers(g, v)):
        seen |= layer
    return depth if seen == g.all_mask else UNREACHABLE


def diameter(g: Graph) -> Distance:
    if not is_connected(g):
        return UNREACHABLE
    return max(eccentricity(g, v) for v in range(g.n))


def neighborhood_i(g: Graph, v: int, i: int) -> VertexSet:
    if i < 1:
        raise ValueError("radius must be >= 1")
    for depth, layer in enumerate(bfs_layers(g, v)):
        if depth == i:
            return VertexSet(layer)
    return VertexSet(0)


# ---------- subsets ----------
def is_clique(g: Graph, s: SetLike) -> bool:
    m = _as_mask(s)
    for v in bits_of(m):
        if (m & ~(1 << v)) & ~g.adj[v]:
            return False
    return True


def is_stable(g: Graph, s: SetLike) -> bool:
    m = _as_mask(s)
    return all(not (g.adj[v] & m) for v in bits_of(m))


def induced_subgraph(g: Graph, s: SetLike) -> Graph:
    m = _as_mask(s)
    if not m:
        raise EmptySet("induced_subgraph needs a nonempty vertex set")
    verts = list(bits_of(m))
    pos = {v: k for k, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for u in bits_of(g.adj[v] & m):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(verts), tuple(rows))


# ---------- canonical form ----------
def _encode(g: Graph, order: Sequence[int]) -> bytes:
    """Upper triangle of g under `order` (position -> vertex), column order, MSB first."""
    n = g.n
    code = 0
    for j in range(1, n):
        row = g.adj[order[j]]
        for i in range(j):
            code = (code << 1) | (row >> order[i] & 1)
    nbits = n * (n - 1) // 2
    return bytes([n]) + code.to_bytes((nbits + 7) // 8, "big")


def _refine(g: Graph, cells: List[List[int]]) -> List[List[int]]:
    """Split cells until every cell is equitable w.r.t. every other cell."""
    while True:
        masks = [mask_of(c) for c in cells]
        out: List[List[int]] = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups = {}
            for v in c:
                row = g.adj[v]
                sig = tuple((row & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                out.append(groups[sig])
        if len(out) == len(cells):
            return out
        cells = out


class _SearchState:
    __slots__ = ("g", "best_code", "best_order", "leaves", "auts")

    def __init__(self, g: Graph):
        self.g = g
        self.best_code: Optional[bytes] = None
        self.best_order: Optional[List[int]] = None
        self.leaves = {}
        self.auts: List[List[int]] = []


def _orbit(v: int, gens: List[List[int]]) -> int:
    seen = 1 << v
    stack = [v]
    while stack:
        x = stack.pop()
        for p in gens:
            y = p[x]
            if not seen >> y & 1:
                seen |= 1 << y
                stack.append(y)
    return seen


def _search(state: _SearchState, cells: List[List[int]], prefix: List[int]) -> None:
    cells = _refine(state.g, cells)
    target = -1
    for k, c in enumerate(cells):
        if len(c) > 1 and (target < 0 or len(c) < len(cells[target])):
            target = k
    if target < 0:
        order = [c[0] for c in cells]
        code = _encode(state.g, order)
        other = state.leaves.get(code)
        if other is not None:
            aut = [0] * state.g.n
            for a, b in zip(order, other):
                aut[a] = b
            state.auts.append(aut)
            return
        state.leaves[code] = order
        if state.best_code is None or code < state.best_code:
            state.best_code, state.best_order = code, order
        return

    explored = 0
    cell = cells[target]
    for v in cell:
        if explored:
            # automorphisms fixing the prefix pointwise map v's subtree onto an explored one
            gens = [p for p in state.auts if all(p[x] == x for x in prefix)]
            if gens and _orbit(v, gens) & explored:
                continue
        explored |= 1 << v
        rest = [u for u in cell if u != v]
        _search(state, cells[:target] + [[v], rest] + cells[target + 1:], prefix + [v])


def canonical_labeling(g: Graph, root: Optional[int] = None) -> Tuple[List[int], CanonicalForm]:
    """
    Returns (order, form): order[i] is the vertex placed at canonical position i.
    With `root`, that vertex is individualized first and always sits at position 0.
    """
    state = _SearchState(g)
    everything = list(range(g.n))
    if root is None:
        cells = [everything]
    else:
        cells = [[root], [u for u in everything if u != root]] if g.n > 1 else [[root]]
    _search(state, cells, [] if root is None else [root])
    assert state.best_order is not None and state.best_code is not None
    return state.best_order, CanonicalForm(state.best_code)


def canonical_form(g: Graph) -> CanonicalForm:
    return canonical_labeling(g)[1]


def rooted_canonical_form(g: Graph, v: int) -> CanonicalForm:
    return canonical_labeling(g, root=v)[1]


def canonical_graph(g: Graph) -> Graph:
    """g relabeled into its canonical labeling."""
    order, _ = canonical_labeling(g)
    mapping = [0] * g.n
    for pos, v in enumerate(order):
        mapping[v] = pos
    return g.relabel(mapping)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    return canonical_form(a) == canonical_form(b)
