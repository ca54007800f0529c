# structcheck.py
"""
Structural predicates used by the distance-two arguments: forbidden induced
patterns (claw, C6 and its two chorded variants), two-clique covers of a
neighbourhood, induced C5 inside a neighbourhood, stability number and the
"second neighbourhood is a clique" observation.

Every find_* returns the lexicographically smallest witness (as an ordered
vertex tuple) or None.
"""
from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from distgraph import clique_number, g2_rows, max_clique, rows_triangle_free
from errors import HypothesisFailed
from graphcore import (
    Graph, VertexSet, bfs_layers, bits_of, diameter, is_clique,
)


class Pattern(str, Enum):
    CLAW = "CLAW"
    C6 = "C6"
    C6P = "C6P"
    C6PP = "C6PP"
    C5_IN_NBHD = "C5_IN_NBHD"


class VertexTag(str, Enum):
    TWO_CLIQUES = "TWO_CLIQUES"
    C5_NBHD = "C5_NBHD"
    BOTH = "BOTH"
    NEITHER = "NEITHER"


@dataclass(frozen=True)
class PatternWitness:
    pattern: Pattern
    vertices: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {"pattern": self.pattern.value, "vertices": list(self.vertices)}


@dataclass(frozen=True)
class CliqueCover2:
    a: VertexSet
    b: VertexSet

    def to_dict(self) -> dict:
        return {"a": self.a.to_list(), "b": self.b.to_list()}


# ---------- pattern tables ----------
def _pattern_rows(k: int, edges: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    rows = [0] * k
    for i, j in edges:
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return tuple(rows)


_CYCLE6 = [(i, (i + 1) % 6) for i in range(6)]
# positions are v1..v6 -> 0..5, so the chord v1v3 is (0, 2) and v3v5 is (2, 4)
PATTERN_ROWS: Dict[Pattern, Tuple[int, ...]] = {
    Pattern.CLAW: _pattern_rows(4, [(0, 1), (0, 2), (0, 3)]),
    Pattern.C6: _pattern_rows(6, _CYCLE6),
    Pattern.C6P: _pattern_rows(6, _CYCLE6 + [(0, 2)]),
    Pattern.C6PP: _pattern_rows(6, _CYCLE6 + [(0, 2), (2, 4)]),
    Pattern.C5_IN_NBHD: _pattern_rows(5, [(i, (i + 1) % 5) for i in range(5)]),
}

C6_VARIANTS = (Pattern.C6, Pattern.C6P, Pattern.C6PP)


def _scan_pattern(g: Graph, prows: Tuple[int, ...], within: int) -> Optional[Tuple[int, ...]]:
    """
    Ordered depth-first scan for an induced copy of the pattern inside `within`.
    Position k may only take vertices whose adjacency to every earlier position
    matches the pattern exactly, so the first hit is the lexicographically
    smallest ordered witness.
    """
    k = len(prows)
    need = [row.bit_count() for row in prows]
    seq: List[int] = []

    def extend(pos: int, used: int) -> bool:
        if pos == k:
            return True
        cand = within & ~used
        for i, v in enumerate(seq):
            if prows[i] >> pos & 1:
                cand &= g.adj[v]
            else:
                cand &= ~g.adj[v]
        for u in bits_of(cand):
            if (g.adj[u] & within).bit_count() < need[pos]:
                continue
            seq.append(u)
            if extend(pos + 1, used | 1 << u):
                return True
            seq.pop()
        return False

    return tuple(seq) if extend(0, 0) else None


def find_induced_claw(g: Graph) -> Optional[PatternWitness]:
    hit = _scan_pattern(g, PATTERN_ROWS[Pattern.CLAW], g.all_mask)
    return PatternWitness(Pattern.CLAW, hit) if hit else None


def find_induced_c6_variant(g: Graph, variant: Pattern) -> Optional[PatternWitness]:
    if variant not in C6_VARIANTS:
        raise ValueError(f"not a C6 variant: {variant}")
    if g.n < 6:
        return None
    hit = _scan_pattern(g, PATTERN_ROWS[variant], g.all_mask)
    return PatternWitness(variant, hit) if hit else None


def find_c5_in_neighborhood(g: Graph, v: int) -> Optional[PatternWitness]:
    nbhd = g.adj[v]
    if nbhd.bit_count() < 5:
        return None
    hit = _scan_pattern(g, PATTERN_ROWS[Pattern.C5_IN_NBHD], nbhd)
    return PatternWitness(Pattern.C5_IN_NBHD, hit) if hit else None


# ---------- two-clique covers ----------
def two_clique_cover(g: Graph, v: int) -> Optional[CliqueCover2]:
    """
    Split N(v) into two cliques by 2-colouring the complement of G[N(v)].
    Each complement component's smallest vertex goes to side a. None when the
    complement has an odd cycle.
    """
    nbhd = g.adj[v]
    side = {}
    a = b = 0
    for start in bits_of(nbhd):
        if start in side:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            # complement neighbours of x inside N(v)
            for y in bits_of(nbhd & ~g.adj[x] & ~(1 << x)):
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return None
    for x, s in side.items():
        if s == 0:
            a |= 1 << x
        else:
            b |= 1 << x
    return CliqueCover2(VertexSet(a), VertexSet(b))


def theorem_hypothesis_holds(g: Graph) -> Optional[int]:
    """Smallest vertex whose neighbourhood is covered by at most two cliques."""
    for v in range(g.n):
        if two_clique_cover(g, v) is not None:
            return v
    return None


def is_quasi_line(g: Graph) -> bool:
    return all(two_clique_cover(g, v) is not None for v in range(g.n))


# ---------- stability ----------
def find_stable_set(g: Graph) -> VertexSet:
    return max_clique(g.complement())


def stability_number(g: Graph) -> int:
    return clique_number(g.complement())


# ---------- lemma checks ----------
@dataclass(frozen=True)
class Lemma22Report:
    tags: Tuple[VertexTag, ...]

    @property
    def violations(self) -> List[int]:
        return [v for v, t in enumerate(self.tags) if t is VertexTag.NEITHER]

    @property
    def both(self) -> List[int]:
        return [v for v, t in enumerate(self.tags) if t is VertexTag.BOTH]


def check_lemma_2_2(g: Graph) -> Lemma22Report:
    claw = find_induced_claw(g)
    if claw is not None:
        raise HypothesisFailed(f"graph has an induced claw at {claw.vertices}")
    alpha = stability_number(g)
    if alpha < 3:
        raise HypothesisFailed(f"stability number {alpha} < 3")
    tags = []
    for v in range(g.n):
        covered = two_clique_cover(g, v) is not None
        c5 = find_c5_in_neighborhood(g, v) is not None
        if covered and c5:
            tags.append(VertexTag.BOTH)
        elif covered:
            tags.append(VertexTag.TWO_CLIQUES)
        elif c5:
            tags.append(VertexTag.C5_NBHD)
        else:
            tags.append(VertexTag.NEITHER)
    return Lemma22Report(tuple(tags))


def check_observation_2_1(g: Graph) -> Optional[Tuple[int, int, int]]:
    """(v, x, y) with x, y in N^2(v) non-adjacent, or None when every N^2(v) is a clique."""
    d = diameter(g)
    if d != 2:
        raise HypothesisFailed(f"diameter is {d}, not 2")
    if not rows_triangle_free(g2_rows(g)):
        raise HypothesisFailed("G_2 has a triangle")
    for v in range(g.n):
        layers = list(bfs_layers(g, v))
        second = layers[2] if len(layers) > 2 else 0
        for x in bits_of(second):
            missing = second & ~g.adj[x] & ~(1 << x) & ~((1 << (x + 1)) - 1)
            if missing:
                y = (missing & -missing).bit_length() - 1
                return (v, x, y)
    return None


# ---------- second neighbourhood split (two-clique case) ----------
@dataclass(frozen=True)
class SecondNeighborhoodSplit:
    """
    N^2(v) split against a cover (V1, U1): A sees only V1, C only U1, B both.
    B is refined into b1 (complete to V1 only), b2 (complete to both),
    b3 (complete to U1 only) and `incomplete` (complete to neither).
    """
    a: VertexSet
    b: VertexSet
    c: VertexSet
    b1: VertexSet
    b2: VertexSet
    b3: VertexSet
    incomplete: VertexSet
    a_complete: bool
    c_complete: bool

    @property
    def claims_hold(self) -> bool:
        return self.a_complete and self.c_complete and not self.incomplete.bits


def second_neighborhood_partition(g: Graph, v: int, cover: CliqueCover2) -> SecondNeighborhoodSplit:
    v1, u1 = cover.a.bits, cover.b.bits
    layers = list(bfs_layers(g, v))
    second = layers[2] if len(layers) > 2 else 0
    a = b = c = 0
    b1 = b2 = b3 = bad = 0
    a_complete = c_complete = True
    for x in bits_of(second):
        row = g.adj[x]
        sees_v, sees_u = bool(row & v1), bool(row & u1)
        full_v, full_u = (row & v1) == v1, (row & u1) == u1
        bit = 1 << x
        if sees_v and sees_u:
            b |= bit
            if full_v and full_u:
                b2 |= bit
            elif full_v:
                b1 |= bit
            elif full_u:
                b3 |= bit
            else:
                bad |= bit
        elif sees_v:
            a |= bit
            a_complete &= full_v
        else:
            c |= bit
            c_complete &= full_u
    return SecondNeighborhoodSplit(
        VertexSet(a), VertexSet(b), VertexSet(c),
        VertexSet(b1), VertexSet(b2), VertexSet(b3), VertexSet(bad),
        a_complete, c_complete,
    )


def cover_is_valid(g: Graph, v: int, cover: CliqueCover2) -> bool:
    a, b = cover.a.bits, cover.b.bits
    return (a | b) == g.adj[v] and not (a & b) and is_clique(g, a) and is_clique(g, b)