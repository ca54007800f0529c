# enumeration.py
"""
Isomorph-free generation of connected graphs by canonical augmentation.

A child is a parent plus one new vertex joined to a nonempty subset of the
parent's vertices. Every connected graph on m >= 2 vertices picks one orbit of
non-cut vertices as its "last vertex" orbit:

  1. only non-cut vertices qualify (the parent must stay connected);
  2. among them, minimise the cheap key (degree, sorted neighbour degrees);
  3. among the survivors, minimise the rooted canonical form.

The child is accepted only if the new vertex lies in that orbit, and children
of one parent are deduplicated by the new vertex's rooted canonical form.
Each isomorphism class is therefore produced exactly once.
"""
from __future__ import annotations
import sys
from typing import Callable, Iterator, List, Optional, Tuple

from config import ENUM_SOFT_LIMIT, LABELED_LIMIT, SUBTREE_FACTOR, VERBOSE
from errors import CapExceeded
from graphcore import (
    CanonicalForm, Graph, bits_of, empty_graph, reachable_mask,
    rooted_canonical_form,
)

Visitor = Callable[[Graph], None]


def _debug(msg: str) -> None:
    if VERBOSE:
        print(f"[Enum] {msg}", file=sys.stderr, flush=True)


def _is_cut_vertex(g: Graph, v: int) -> bool:
    rest = g.all_mask & ~(1 << v)
    if not rest:
        return False
    start = (rest & -rest).bit_length() - 1
    return reachable_mask(g, start, within=rest) != rest


def _cheap_key(g: Graph, v: int) -> Tuple[int, Tuple[int, ...]]:
    row = g.adj[v]
    return (row.bit_count(), tuple(sorted(g.adj[u].bit_count() for u in bits_of(row))))


def accept_child(child: Graph) -> Optional[CanonicalForm]:
    """Rooted form of the last vertex if it sits in the canonical deletion orbit, else None."""
    last = child.n - 1
    if child.n <= 2:
        return rooted_canonical_form(child, last)
    mine = _cheap_key(child, last)
    ties = [last]
    for v in range(last):
        key = _cheap_key(child, v)
        if key > mine:
            continue
        if _is_cut_vertex(child, v):
            continue
        if key < mine:
            return None
        ties.append(v)
    form = rooted_canonical_form(child, last)
    for v in ties[1:]:
        if rooted_canonical_form(child, v) < form:
            return None
    return form


def children(parent: Graph) -> Iterator[Graph]:
    """Accepted one-vertex extensions of `parent`, one per isomorphism class."""
    m = parent.n
    new_bit = 1 << m
    seen = set()
    for nbrs in range(1, 1 << m):
        rows = list(parent.adj)
        for u in bits_of(nbrs):
            rows[u] |= new_bit
        rows.append(nbrs)
        child = Graph(m + 1, tuple(rows))
        form = accept_child(child)
        if form is None or form in seen:
            continue
        seen.add(form)
        yield child


def expand(seed: Graph, n: int, visitor: Visitor) -> int:
    """Visit every class on n vertices descending from `seed`; returns the count."""
    if seed.n == n:
        visitor(seed)
        return 1
    total = 0
    for child in children(seed):
        total += expand(child, n, visitor)
    return total


def _check_limit(n: int, force: bool) -> None:
    if n < 1:
        raise CapExceeded(f"n={n}: need at least one vertex")
    if n > ENUM_SOFT_LIMIT and not force:
        raise CapExceeded(f"n={n} is above the enumeration limit {ENUM_SOFT_LIMIT}; pass force to run anyway")


def enumerate_connected(n: int, visitor: Visitor, force: bool = False) -> int:
    _check_limit(n, force)
    count = expand(empty_graph(1), n, visitor)
    _debug(f"n={n}: {count} connected classes")
    return count


def connected_classes(n: int, force: bool = False) -> List[Graph]:
    out: List[Graph] = []
    enumerate_connected(n, out.append, force=force)
    return out


def enumerate_labeled(n: int, visitor: Visitor) -> int:
    """Every labeled graph on n vertices, one per edge mask (connected or not)."""
    if n < 1 or n > LABELED_LIMIT:
        raise CapExceeded(f"labeled enumeration supports 1 <= n <= {LABELED_LIMIT}, got {n}")
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    count = 0
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for k in bits_of(mask):
            i, j = pairs[k]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        visitor(Graph(n, tuple(rows)))
        count += 1
    return count


def subtree_seeds(n: int, workers: int, force: bool = False) -> List[Graph]:
    """
    Classes at the shallowest level with at least SUBTREE_FACTOR * workers
    members (or level n itself). Expanding each seed to n covers every class
    on n vertices exactly once.
    """
    _check_limit(n, force)
    target = SUBTREE_FACTOR * max(1, workers)
    level = [empty_graph(1)]
    while level[0].n < n and len(level) < target:
        level = [c for g in level for c in children(g)]
    _debug(f"n={n}: {len(level)} seeds at depth {level[0].n}")
    return level
