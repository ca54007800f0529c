# families.py
"""
Graph transformations and parametric constructions from the distance-two
argument: the spindle move that lowers the diameter, its iteration down to
diameter two, the two-clique rewiring that moves pairing vertices across to
the other clique, and the G' / G'' families together with their closed-form pair counts.
"""
from __future__ import annotations
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from config import VERBOSE, VERTEX_CAP
from distgraph import g2_pairs, g2_rows, rows_triangle_free
from errors import (
    CapExceeded, DiameterTooSmall, Disconnected, HypothesisFailed,
    InvalidSpindle, IterationCapExceeded,
)
from graphcore import (
    Graph, VertexSet, bfs_distances, bfs_layers, bits_of,
    diameter, eccentricity, from_edges, is_connected,
)
from structcheck import CliqueCover2, two_clique_cover


def _debug(msg: str) -> None:
    if VERBOSE:
        print(f"[Families] {msg}", file=sys.stderr, flush=True)


# ---------- bound helpers ----------
def bound_value(n: int) -> int:
    """floor((n-1)^2 / 4) + 1, the integer form of the conjectured maximum of e(G_2)."""
    return (n - 1) ** 2 // 4 + 1


def abstract_bound_value(n: int) -> int:
    """floor((n^2 - 1) / 4) + 1, the form printed in the abstract; larger than bound_value for n >= 2."""
    return (n * n - 1) // 4 + 1


# ---------- spindles ----------
@dataclass(frozen=True)
class Spindle:
    path: Tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.path) - 1

    def v_d_set(self, g: Graph) -> VertexSet:
        """V_d = N(v_{d-1}) minus v_{d-2}; contains v_d."""
        d = self.d
        return VertexSet(g.adj[self.path[d - 1]] & ~(1 << self.path[d - 2]))


def find_spindle(g: Graph) -> Spindle:
    if not is_connected(g):
        raise Disconnected("spindles need a connected graph")
    d = diameter(g)
    if d < 2:
        raise DiameterTooSmall(f"diameter {d} < 2")
    v0 = next(v for v in range(g.n) if eccentricity(g, v) == d)
    from_v0 = bfs_distances(g, v0)
    vd = next(u for u in range(g.n) if from_v0[u] == d)
    to_vd = bfs_distances(g, vd)
    path = [v0]
    cur = v0
    for i in range(1, d + 1):
        cur = next(u for u in bits_of(g.adj[cur]) if to_vd[u] == d - i)
        path.append(cur)
    return Spindle(tuple(path))


def spindle_is_valid(g: Graph, s: Spindle) -> bool:
    d = s.d
    if d < 2 or len(set(s.path)) != len(s.path):
        return False
    if any(not (0 <= v < g.n) for v in s.path):
        return False
    if diameter(g) != d:
        return False
    dist = bfs_distances(g, s.path[0])
    return all(dist[v] == i for i, v in enumerate(s.path))


def move_vd(g: Graph, s: Spindle) -> Graph:
    """Delete the edges v_{d-1}--V_d and join v_{d-2} to all of V_d."""
    if not spindle_is_valid(g, s):
        raise InvalidSpindle(f"{s.path} is not a diametral geodesic of this graph")
    d = s.d
    hub, target = s.path[d - 1], s.path[d - 2]
    moved = list(s.v_d_set(g))
    return g.remove_edges((hub, x) for x in moved).add_edges((target, x) for x in moved if x != target)


@dataclass
class ReductionTrace:
    graph: Graph
    pairs: List[int] = field(default_factory=list)      # e(G_2) before the first move, then after each
    tfree: List[bool] = field(default_factory=list)     # G_2 triangle-free after each move
    spindles: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.spindles)

    @property
    def monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.pairs, self.pairs[1:]))

    def to_dict(self) -> dict:
        return {
            "steps": self.steps,
            "pairs": list(self.pairs),
            "tfree": list(self.tfree),
            "spindles": [list(p) for p in self.spindles],
            "monotone": self.monotone,
        }


def reduce_to_diameter_2(g: Graph, cap: Optional[int] = None) -> ReductionTrace:
    if not is_connected(g):
        raise Disconnected("reduction needs a connected graph")
    d = diameter(g)
    if d < 2:
        raise DiameterTooSmall(f"diameter {d} < 2")
    limit = g.n * g.n if cap is None else cap
    trace = ReductionTrace(graph=g)
    cur = g
    while diameter(cur) > 2:
        if trace.steps >= limit:
            raise IterationCapExceeded(f"no diameter-2 graph after {limit} moves", trace.pairs)
        if not trace.pairs:
            trace.pairs.append(g2_pairs(cur))
        s = find_spindle(cur)
        cur = move_vd(cur, s)
        trace.spindles.append(s.path)
        trace.pairs.append(g2_pairs(cur))
        trace.tfree.append(rows_triangle_free(g2_rows(cur)))
        _debug(f"move on {s.path}: e(G_2) -> {trace.pairs[-1]}")
    trace.graph = cur
    return trace


# ---------- families ----------
@dataclass(frozen=True)
class FamilyParams:
    x: int
    y: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1:
            raise ValueError(f"family parameters need x >= 1 and y >= 1, got ({self.x}, {self.y})")

    @property
    def n(self) -> int:
        return self.x + self.y + 3


def _check_order(p: FamilyParams) -> None:
    if p.n > VERTEX_CAP:
        raise CapExceeded(f"family order {p.n} exceeds the {VERTEX_CAP}-vertex cap")


def _clique_edges(vertices: List[int]) -> List[Tuple[int, int]]:
    return [(a, b) for i, a in enumerate(vertices) for b in vertices[i + 1:]]


def build_family_gpp(p: FamilyParams) -> Graph:
    """
    G'': apex 0; cliques V (1..x) and U (x+1..x+y) both joined to the apex and
    not to each other; u = x+y+1 joined to V; w = x+y+2 joined to U; edge u-w.
    """
    _check_order(p)
    x, y = p.x, p.y
    vside = list(range(1, x + 1))
    uside = list(range(x + 1, x + y + 1))
    u, w = x + y + 1, x + y + 2
    edges = [(0, a) for a in vside + uside]
    edges += _clique_edges(vside) + _clique_edges(uside)
    edges += [(u, a) for a in vside] + [(w, a) for a in uside] + [(u, w)]
    return from_edges(p.n, edges)


def build_family_gp(p: FamilyParams) -> Graph:
    """
    G': apex 0; clique V'_1 = {u1} + V'_12 joined to the apex (u1 = 1,
    V'_12 = 2..x+1); clique V'_2 = V'_21 + {u2} (V'_21 = x+2..x+y+1,
    u2 = x+y+2); u1 complete to V'_21 and V'_12 complete to u2.
    """
    _check_order(p)
    x, y = p.x, p.y
    u1 = 1
    v12 = list(range(2, x + 2))
    v21 = list(range(x + 2, x + y + 2))
    u2 = x + y + 2
    edges = [(0, a) for a in [u1] + v12]
    edges += _clique_edges([u1] + v12) + _clique_edges(v21 + [u2])
    edges += [(u1, a) for a in v21] + [(a, u2) for a in v12]
    return from_edges(p.n, edges)


def closed_form_gpp(p: FamilyParams) -> int:
    return p.x * p.y + p.x + p.y + 2


def closed_form_gp(p: FamilyParams) -> int:
    """The printed G' count, xy + x + 2, with x = |V'_12| and y = |V'_21|."""
    return p.x * p.y + p.x + 2


def closed_form_gp_direct(p: FamilyParams) -> int:
    """Direct count for the builder's labeling: xy + y + 2."""
    return p.x * p.y + p.y + 2


def gp_labeling_match(p: FamilyParams) -> Dict[str, object]:
    """Which closed form the brute-force count of build_family_gp agrees with."""
    counted = g2_pairs(build_family_gp(p))
    return {
        "counted": counted,
        "printed_xy_x_2": closed_form_gp(p),
        "swapped_xy_y_2": closed_form_gp_direct(p),
        "matches": [name for name, val in
                    (("xy+x+2", closed_form_gp(p)), ("xy+y+2", closed_form_gp_direct(p)))
                    if val == counted],
    }


def family_extremal_params(n: int) -> FamilyParams:
    """The most balanced G'' split for order n (equality case when n is odd)."""
    if n < 5:
        raise ValueError(f"G'' needs n >= 5, got {n}")
    x = (n - 3) // 2
    return FamilyParams(x, n - 3 - x)


# ---------- two-clique rewiring ----------
@dataclass(frozen=True)
class Subcase22Setup:
    v: int
    cover: CliqueCover2
    pairing: VertexSet          # B: second-neighbourhood vertices at distance 2 from both sides
    v11: VertexSet              # vertices of V1 at distance 2 from some vertex of B
    u11: VertexSet              # same for U1


def subcase_2_2_setup(g: Graph, v: int) -> Subcase22Setup:
    """Validate the two-clique-with-cross-edges situation at v and compute B."""
    cover = two_clique_cover(g, v)
    if cover is None:
        raise HypothesisFailed(f"N({v}) is not covered by two cliques")
    v1, u1 = cover.a.bits, cover.b.bits
    if not v1 or not u1:
        raise HypothesisFailed(f"N({v}) is a single clique")
    if not any(g.adj[x] & u1 for x in bits_of(v1)):
        raise HypothesisFailed(f"no edge between the two cliques covering N({v})")
    rows2 = g2_rows(g)
    layers = list(bfs_layers(g, v))
    second = layers[2] if len(layers) > 2 else 0
    pairing = v11 = u11 = 0
    for x in bits_of(second):
        if rows2[x] & v1 and rows2[x] & u1:
            pairing |= 1 << x
            v11 |= rows2[x] & v1
            u11 |= rows2[x] & u1
    return Subcase22Setup(v, cover, VertexSet(pairing), VertexSet(v11), VertexSet(u11))


def _rewire(g: Graph, setup: Subcase22Setup, b1: int, b2: int) -> Graph:
    v1, u1 = setup.cover.a.bits, setup.cover.b.bits
    rows = list(g.adj)

    def cut(a: int, b: int) -> None:
        rows[a] &= ~(1 << b)
        rows[b] &= ~(1 << a)

    def join(a: int, b: int) -> None:
        rows[a] |= 1 << b
        rows[b] |= 1 << a

    for p in bits_of(v1):
        for q in bits_of(rows[p] & u1):
            cut(p, q)
    for x in bits_of(b1):
        for q in bits_of(rows[x] & u1):
            cut(x, q)
        join(x, setup.v)
        for p in bits_of(v1):
            join(x, p)
    for x in bits_of(b2):
        for p in bits_of(rows[x] & v1):
            cut(x, p)
        join(x, setup.v)
        for q in bits_of(u1):
            join(x, q)
    for x in bits_of(b1):
        for y in bits_of(rows[x] & b2):
            cut(x, y)
    return Graph(g.n, tuple(rows))


def rewire_subcase_2_2(g: Graph, v: int, b1: VertexSet, b2: VertexSet) -> Graph:
    """
    Delete the edges between the two cliques covering N(v), move b1 into the
    first clique and b2 into the second (a moved vertex drops its edges to the
    other side and to the other half of B).
    """
    setup = subcase_2_2_setup(g, v)
    if b1.bits & b2.bits:
        raise HypothesisFailed("b1 and b2 overlap")
    if (b1.bits | b2.bits) != setup.pairing.bits:
        raise HypothesisFailed(f"b1 + b2 must equal B = {setup.pairing.to_list()}")
    return _rewire(g, setup, b1.bits, b2.bits)


@dataclass(frozen=True)
class SplitOutcome:
    b1: Tuple[int, ...]
    b2: Tuple[int, ...]
    before: int
    after: int
    lhs_term: int           # (a+c)(b+d) - (c+d)(a+b), the claimed lower bound on the change
    printed_rhs: int        # (a-d)(b-d), the quoted closed form; lhs_term really expands to (a-d)(b-c)

    @property
    def delta(self) -> int:
        return self.after - self.before


@dataclass(frozen=True)
class SplitSearch:
    setup: Subcase22Setup
    outcomes: Tuple[SplitOutcome, ...]

    @property
    def best(self) -> SplitOutcome:
        # largest delta, ties to the first split in mask order
        return max(self.outcomes, key=lambda o: o.delta)

    @property
    def exists_nonnegative(self) -> bool:
        return any(o.delta >= 0 for o in self.outcomes)


def best_split_subcase_2_2(g: Graph, v: int) -> SplitSearch:
    """Try every split of B into (b1, b2) and record the brute-force change of e(G_2)."""
    setup = subcase_2_2_setup(g, v)
    members = setup.pairing.to_list()
    before = g2_pairs(g)
    a, b = len(setup.v11), len(setup.u11)
    outcomes = []
    for mask in range(1 << len(members)):
        left = [x for i, x in enumerate(members) if mask >> i & 1]
        right = [x for i, x in enumerate(members) if not mask >> i & 1]
        c, d = len(left), len(right)
        h = _rewire(g, setup, VertexSet.of(left).bits, VertexSet.of(right).bits)
        outcomes.append(SplitOutcome(
            tuple(left), tuple(right), before, g2_pairs(h),
            (a + c) * (b + d) - (c + d) * (a + b), (a - d) * (b - d),
        ))
    return SplitSearch(setup, tuple(outcomes))


def subcase_2_2_vertices(g: Graph) -> List[int]:
    """Vertices where the two-clique-with-cross-edges rewiring applies with a nonempty B."""
    out = []
    for v in range(g.n):
        try:
            setup = subcase_2_2_setup(g, v)
        except HypothesisFailed:
            continue
        if setup.pairing.bits:
            out.append(v)
    return out
