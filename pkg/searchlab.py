# searchlab.py
"""
Verification harness: exhaustive bound search, structural-claim sweeps and a
stochastic prober for orders beyond exhaustive reach.

Work is split into subtree seeds (see enumeration.subtree_seeds); every seed
chunk produces a tally, and tallies merge as a commutative monoid (sums, max,
sorted-and-capped witness lists), so the final report does not depend on the
number of workers or on the order chunks finish in.
"""
from __future__ import annotations
import bisect
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from config import (
    ANNEAL_RESTARTS, ANNEAL_STEPS, ANNEAL_T0, ANNEAL_T_END, CLAIMS_LIMIT,
    DEFAULT_VERIFY_CEILING, GRAPH6_MAX_N, MAX_CERTS, MAX_WITNESSES, PROGRESS,
    SUBTREE_FACTOR, VERBOSE,
)
from distgraph import g2_rows, rows_pair_count, rows_triangle_free
from enumeration import expand, subtree_seeds
from errors import CapExceeded, LongRunRequired, OrderMismatch
from families import (
    abstract_bound_value, best_split_subcase_2_2, bound_value, build_family_gpp,
    family_extremal_params, find_spindle, move_vd, subcase_2_2_vertices,
)
from graph6 import decode_graph6, encode_graph6, iter_graph6_file
from graphcore import Graph, is_connected, path_graph
from structcheck import (
    C6_VARIANTS, check_lemma_2_2, check_observation_2_1, find_induced_c6_variant,
    find_induced_claw, stability_number, theorem_hypothesis_holds,
)

BOUND_FORM = "floor((n-1)^2/4)+1"
BOUND_NOTE = ("verified against (n-1)^2/4+1; the alternative form (n^2-1)/4+1 "
              "is reported as abstract_bound_value and is larger for every n >= 2")


def _debug(msg: str) -> None:
    if VERBOSE:
        print(f"[Search] {msg}", file=sys.stderr, flush=True)


def _insort_capped(items: List, item, cap: int) -> None:
    if len(items) >= cap and item >= items[-1]:
        return
    bisect.insort(items, item)
    del items[cap:]


def _diameter_at_most_2(g: Graph, rows2: Sequence[int]) -> bool:
    full = g.all_mask
    return all((g.adj[v] | rows2[v] | 1 << v) == full for v in range(g.n))


# =============================================================================
# bound search
# =============================================================================
class Mode(str, Enum):
    EXHAUSTIVE = "EXHAUSTIVE"
    STREAM = "STREAM"
    ANNEAL = "ANNEAL"


@dataclass
class BoundTally:
    seen: int = 0
    admissible: int = 0
    max_pairs: int = -1
    certs: List[str] = field(default_factory=list)
    certs_total: int = 0
    hyp_max: int = -1
    hyp_free: int = 0
    first_hyp_free: Optional[str] = None    # smallest graph6 with no hypothesis vertex

    def add(self, g: Graph, diam2_only: bool) -> None:
        self.seen += 1
        hyp = theorem_hypothesis_holds(g)
        if hyp is None:
            self.hyp_free += 1
            code = encode_graph6(g)
            if self.first_hyp_free is None or code < self.first_hyp_free:
                self.first_hyp_free = code
        rows2 = g2_rows(g)
        if diam2_only and not _diameter_at_most_2(g, rows2):
            return
        if not rows_triangle_free(rows2):
            return
        self.admissible += 1
        pairs = rows_pair_count(rows2)
        if pairs > self.max_pairs:
            self.max_pairs, self.certs, self.certs_total = pairs, [encode_graph6(g)], 1
        elif pairs == self.max_pairs:
            self.certs_total += 1
            _insort_capped(self.certs, encode_graph6(g), MAX_CERTS)
        if pairs > self.hyp_max and hyp is not None:
            self.hyp_max = pairs

    def merge(self, other: "BoundTally") -> "BoundTally":
        out = BoundTally(self.seen + other.seen, self.admissible + other.admissible,
                         hyp_max=max(self.hyp_max, other.hyp_max),
                         hyp_free=self.hyp_free + other.hyp_free)
        firsts = [c for c in (self.first_hyp_free, other.first_hyp_free) if c is not None]
        out.first_hyp_free = min(firsts) if firsts else None
        if self.max_pairs == other.max_pairs:
            out.max_pairs = self.max_pairs
            out.certs_total = self.certs_total + other.certs_total
            out.certs = sorted(set(self.certs) | set(other.certs))[:MAX_CERTS]
        else:
            top = self if self.max_pairs > other.max_pairs else other
            out.max_pairs, out.certs_total, out.certs = top.max_pairs, top.certs_total, list(top.certs)
        return out

    def to_dict(self) -> dict:
        return {"seen": self.seen, "admissible": self.admissible, "max_pairs": self.max_pairs,
                "certs": list(self.certs), "certs_total": self.certs_total, "hyp_max": self.hyp_max,
                "hyp_free": self.hyp_free, "first_hyp_free": self.first_hyp_free}

    @classmethod
    def from_dict(cls, d: dict) -> "BoundTally":
        return cls(d["seen"], d["admissible"], d["max_pairs"], list(d["certs"]),
                   d["certs_total"], d["hyp_max"], d["hyp_free"], d["first_hyp_free"])


@dataclass
class SearchReport:
    n: int
    mode: Mode
    graphs_seen: int
    graphs_admissible: int
    max_pairs: Optional[int]
    bound_value: int
    bound_holds: bool
    extremal_certs: List[str]
    certs_total: int
    hypothesis_max_pairs: Optional[int]
    hypothesis_free: int = 0
    first_hypothesis_free: Optional[str] = None
    diam2_only: bool = False
    source: str = "builtin"
    skipped_disconnected: int = 0
    wall_time: float = 0.0
    worker_count: int = 1

    @property
    def certs_truncated(self) -> bool:
        return self.certs_total > len(self.extremal_certs)

    @classmethod
    def from_tally(cls, n: int, mode: Mode, t: BoundTally, **kw) -> "SearchReport":
        bound = bound_value(n)
        best = t.max_pairs if t.admissible else None
        return cls(
            n=n, mode=mode, graphs_seen=t.seen, graphs_admissible=t.admissible,
            max_pairs=best, bound_value=bound, bound_holds=best is None or best <= bound,
            extremal_certs=list(t.certs), certs_total=t.certs_total,
            hypothesis_max_pairs=t.hyp_max if t.hyp_max >= 0 else None,
            hypothesis_free=t.hyp_free, first_hypothesis_free=t.first_hyp_free, **kw,
        )

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "mode": self.mode.value,
            "diam2_only": self.diam2_only,
            "source": self.source,
            "graphs_seen": self.graphs_seen,
            "graphs_admissible": self.graphs_admissible,
            "skipped_disconnected": self.skipped_disconnected,
            "max_pairs": self.max_pairs,
            "bound_form": BOUND_FORM,
            "bound_value": self.bound_value,
            "abstract_bound_value": abstract_bound_value(self.n),
            "bound_note": BOUND_NOTE,
            "bound_holds": self.bound_holds,
            "hypothesis_max_pairs": self.hypothesis_max_pairs,
            "hypothesis_free": self.hypothesis_free,
            "first_hypothesis_free": self.first_hypothesis_free,
            "extremal_certs": list(self.extremal_certs),
            "certs_total": self.certs_total,
            "certs_truncated": self.certs_truncated,
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
            d["worker_count"] = self.worker_count
        return d


# ---------- chunk runner ----------
def _chunks(seeds: List[Graph], workers: int) -> List[List[str]]:
    count = min(len(seeds), SUBTREE_FACTOR * max(1, workers))
    return [[encode_graph6(g) for g in seeds[k::count]] for k in range(count)]


def _load_checkpoint(path: Optional[Path], key: dict) -> Tuple[set, Optional[dict]]:
    if path is None or not path.exists():
        return set(), None
    with open(path, "r", encoding="utf-8") as fh:
        state = json.load(fh)
    if state.get("key") != key:
        _debug(f"checkpoint {path} belongs to another run; ignoring it")
        return set(), None
    _debug(f"resuming from {path}: {len(state['done'])} chunks done")
    return set(state["done"]), state["tally"]


def _save_checkpoint(path: Path, key: dict, done: set, tally: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump({"key": key, "done": sorted(done), "tally": tally}, fh)
    os.replace(tmp, path)


def _run_chunks(fn: Callable, jobs: List[tuple], workers: int, desc: str,
                done: Optional[set] = None, on_result: Optional[Callable] = None) -> list:
    """Run fn over jobs (in-process or in a pool); results come back in job order."""
    done = done or set()
    pending = [(i, job) for i, job in enumerate(jobs) if i not in done]
    bar = tqdm(total=len(pending), desc=desc, disable=not PROGRESS, file=sys.stderr)
    results = []
    try:
        if workers <= 1:
            stream = (fn(job) for _, job in pending)
            for (i, _), res in zip(pending, stream):
                results.append(res)
                if on_result:
                    on_result(i, res)
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for (i, _), res in zip(pending, pool.map(fn, [job for _, job in pending])):
                    results.append(res)
                    if on_result:
                        on_result(i, res)
                    bar.update(1)
    finally:
        bar.close()
    return results


def _bound_chunk(job: Tuple[int, List[str], bool]) -> BoundTally:
    n, seeds, diam2_only = job
    tally = BoundTally()
    for s in seeds:
        expand(decode_graph6(s), n, lambda g: tally.add(g, diam2_only))
    return tally


def verify_bound(
    n: int,
    diam2_only: bool = False,
    workers: int = 1,
    source: Optional[Union[str, Path]] = None,
    long_run: bool = False,
    checkpoint: Optional[Path] = None,
) -> SearchReport:
    start = time.perf_counter()
    if source is not None:
        tally, skipped = BoundTally(), 0
        for lineno, g in iter_graph6_file(source):
            if g.n != n:
                raise OrderMismatch(f"line {lineno}: graph has {g.n} vertices, expected {n}")
            if not is_connected(g):
                skipped += 1
                continue
            tally.add(g, diam2_only)
        _debug(f"stream {source}: {tally.seen} connected graphs, {skipped} skipped")
        return SearchReport.from_tally(
            n, Mode.STREAM, tally, diam2_only=diam2_only, source=str(source),
            skipped_disconnected=skipped, wall_time=time.perf_counter() - start, worker_count=1,
        )

    if n > DEFAULT_VERIFY_CEILING and not long_run:
        raise LongRunRequired(f"n={n} is above the default ceiling {DEFAULT_VERIFY_CEILING}; use the long-run flag")
    seeds = subtree_seeds(n, workers, force=long_run)
    jobs = [(n, chunk, diam2_only) for chunk in _chunks(seeds, workers)]
    key = {"kind": "verify", "n": n, "diam2_only": diam2_only, "chunks": len(jobs)}
    done, saved = _load_checkpoint(checkpoint, key)
    total = BoundTally.from_dict(saved) if saved else BoundTally()

    def on_result(i: int, part: BoundTally) -> None:
        nonlocal total
        total = total.merge(part)
        if checkpoint is not None:
            done.add(i)
            _save_checkpoint(checkpoint, key, done, total.to_dict())

    _run_chunks(_bound_chunk, jobs, workers, f"verify n={n}", done, on_result)
    report = SearchReport.from_tally(
        n, Mode.EXHAUSTIVE, total, diam2_only=diam2_only,
        wall_time=time.perf_counter() - start, worker_count=max(1, workers),
    )
    _debug(f"n={n}: max e(G_2)={report.max_pairs}, bound {report.bound_value}, holds={report.bound_holds}")
    return report


# =============================================================================
# claim sweep
# =============================================================================
class Claim(str, Enum):
    LEMMA_2_1 = "LEMMA_2_1"
    LEMMA_2_2 = "LEMMA_2_2"
    OBS_2_1 = "OBS_2_1"
    LEMMA_2_3_MONOTONE = "LEMMA_2_3_MONOTONE"
    MOVE_PRESERVES_TFREE = "MOVE_PRESERVES_TFREE"
    SUBCASE_2_2_SPLIT_EXISTS = "SUBCASE_2_2_SPLIT_EXISTS"


# measured claims never count against the sweep
ASSERTED = frozenset(c for c in Claim if c is not Claim.MOVE_PRESERVES_TFREE)


def _witness_key(w: dict) -> Tuple[str, str]:
    return (w["graph6"], json.dumps(w, sort_keys=True))


@dataclass
class ClaimEntry:
    claim: Claim
    graphs_tested: int = 0
    violations: int = 0
    witnesses: List[dict] = field(default_factory=list)
    extra: Dict[str, int] = field(default_factory=dict)

    @property
    def asserted(self) -> bool:
        return self.claim in ASSERTED

    @property
    def witnesses_truncated(self) -> bool:
        return self.violations > len(self.witnesses)

    def record(self, witness: dict) -> None:
        self.violations += 1
        keys = [_witness_key(w) for w in self.witnesses]
        k = _witness_key(witness)
        if len(keys) >= MAX_WITNESSES and k >= keys[-1]:
            return
        self.witnesses.insert(bisect.bisect(keys, k), witness)
        del self.witnesses[MAX_WITNESSES:]

    def bump(self, name: str, by: int = 1) -> None:
        self.extra[name] = self.extra.get(name, 0) + by

    def merge(self, other: "ClaimEntry") -> "ClaimEntry":
        extra = dict(self.extra)
        for k, v in other.extra.items():
            extra[k] = extra.get(k, 0) + v
        wit = sorted(self.witnesses + other.witnesses, key=_witness_key)[:MAX_WITNESSES]
        return ClaimEntry(self.claim, self.graphs_tested + other.graphs_tested,
                          self.violations + other.violations, wit, extra)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim.value,
            "asserted": self.asserted,
            "graphs_tested": self.graphs_tested,
            "violations": self.violations,
            "witnesses": list(self.witnesses),
            "witnesses_truncated": self.witnesses_truncated,
            "extra": dict(sorted(self.extra.items())),
        }


def _fresh_entries() -> Dict[Claim, ClaimEntry]:
    return {c: ClaimEntry(c) for c in Claim}


def _claims_for_graph(entries: Dict[Claim, ClaimEntry], g: Graph) -> None:
    rows2 = g2_rows(g)
    tfree = rows_triangle_free(rows2)
    g6 = None

    def code() -> str:
        nonlocal g6
        if g6 is None:
            g6 = encode_graph6(g)
        return g6

    claw = find_induced_claw(g)

    if tfree:
        e = entries[Claim.LEMMA_2_1]
        e.graphs_tested += 1
        bad = claw or next(filter(None, (find_induced_c6_variant(g, p) for p in C6_VARIANTS)), None)
        if bad is not None:
            e.record({"graph6": code(), **bad.to_dict()})

    if claw is None and g.n >= 3 and stability_number(g) >= 3:
        e = entries[Claim.LEMMA_2_2]
        e.graphs_tested += 1
        rep = check_lemma_2_2(g)
        if rep.both:
            e.bump("both_graphs")
            e.bump("both_vertices", len(rep.both))
        if rep.violations:
            e.record({"graph6": code(), "neither": rep.violations})

    if not tfree or g.n < 3:
        return
    diam2 = _diameter_at_most_2(g, rows2)
    if diam2 and g.edge_count < g.n * (g.n - 1) // 2:
        e = entries[Claim.OBS_2_1]
        e.graphs_tested += 1
        hit = check_observation_2_1(g)
        if hit is not None:
            e.record({"graph6": code(), "v": hit[0], "x": hit[1], "y": hit[2]})

        e = entries[Claim.SUBCASE_2_2_SPLIT_EXISTS]
        spots = subcase_2_2_vertices(g)
        if spots:
            e.graphs_tested += 1
            for v in spots:
                e.bump("instances")
                search = best_split_subcase_2_2(g, v)
                e.bump("splits", len(search.outcomes))
                e.bump("delta_below_lhs", sum(o.delta < o.lhs_term for o in search.outcomes))
                e.bump("lhs_ne_printed_rhs", sum(o.lhs_term != o.printed_rhs for o in search.outcomes))
                if not search.exists_nonnegative:
                    best = search.best
                    e.record({"graph6": code(), "v": v, "B": search.setup.pairing.to_list(),
                              "best_delta": best.delta, "best_b1": list(best.b1)})
                    break
    elif not diam2:
        before = rows_pair_count(rows2)
        s = find_spindle(g)
        h = move_vd(g, s)
        rows_h = g2_rows(h)
        after = rows_pair_count(rows_h)
        mono = entries[Claim.LEMMA_2_3_MONOTONE]
        mono.graphs_tested += 1
        if after < before:
            mono.record({"graph6": code(), "spindle": list(s.path), "before": before, "after": after})
        keep = entries[Claim.MOVE_PRESERVES_TFREE]
        keep.graphs_tested += 1
        if rows_triangle_free(rows_h):
            keep.bump("preserved")
        else:
            keep.record({"graph6": code(), "spindle": list(s.path), "moved": encode_graph6(h)})


@dataclass
class ClaimReport:
    n: int
    entries: Dict[Claim, ClaimEntry]
    wall_time: float = 0.0
    worker_count: int = 1

    @property
    def asserted_hold(self) -> bool:
        return all(e.violations == 0 for c, e in self.entries.items() if c in ASSERTED)

    def entry(self, claim: Claim) -> ClaimEntry:
        return self.entries[claim]

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "n": self.n,
            "asserted_hold": self.asserted_hold,
            "claims": [self.entries[c].to_dict() for c in Claim],
        }
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
            d["worker_count"] = self.worker_count
        return d


def _claims_chunk(job: Tuple[int, List[str]]) -> Dict[Claim, ClaimEntry]:
    n, seeds = job
    entries = _fresh_entries()
    for s in seeds:
        expand(decode_graph6(s), n, lambda g: _claims_for_graph(entries, g))
    return entries


def check_lemma_claims(n: int, workers: int = 1, force: bool = False) -> ClaimReport:
    if n > CLAIMS_LIMIT and not force:
        raise CapExceeded(f"claim sweeps are limited to n <= {CLAIMS_LIMIT}")
    start = time.perf_counter()
    seeds = subtree_seeds(n, workers, force=force)
    jobs = [(n, chunk) for chunk in _chunks(seeds, workers)]
    entries = _fresh_entries()
    for part in _run_chunks(_claims_chunk, jobs, workers, f"claims n={n}"):
        entries = {c: entries[c].merge(part[c]) for c in Claim}
    report = ClaimReport(n, entries, time.perf_counter() - start, max(1, workers))
    for c in Claim:
        e = entries[c]
        _debug(f"n={n} {c.value}: tested={e.graphs_tested} violations={e.violations}")
    return report


# =============================================================================
# annealing
# =============================================================================
@dataclass(frozen=True)
class AnnealRun:
    best_pairs: int
    best_graph6: str
    feasible: int


def initial_state(n: int, init: str) -> Graph:
    if init == "family":
        return build_family_gpp(family_extremal_params(n))
    if init == "path":
        return path_graph(n)
    raise ValueError(f"unknown initial state {init!r}; use 'path' or 'family'")


def _anneal_once(job: Tuple[int, int, np.random.SeedSequence, str, float, float]) -> AnnealRun:
    n, steps, seq, init, t0, t_end = job
    rng = np.random.default_rng(seq)
    g = initial_state(n, init)
    cur = rows_pair_count(g2_rows(g))
    best, best_g = cur, g
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    feasible = 0
    if not pairs or steps <= 0:
        return AnnealRun(best, encode_graph6(best_g), feasible)
    cool = (t_end / t0) ** (1.0 / max(1, steps - 1))
    temp = t0
    for _ in range(steps):
        i, j = pairs[int(rng.integers(len(pairs)))]
        rows = list(g.adj)
        rows[i] ^= 1 << j
        rows[j] ^= 1 << i
        h = Graph(n, tuple(rows))
        roll = rng.random()
        if is_connected(h):
            rows2 = g2_rows(h)
            if rows_triangle_free(rows2):
                feasible += 1
                val = rows_pair_count(rows2)
                delta = val - cur
                if delta >= 0 or roll < math.exp(delta / temp):
                    g, cur = h, val
                    if cur > best:
                        best, best_g = cur, g
        temp *= cool
    return AnnealRun(best, encode_graph6(best_g), feasible)


def anneal_search(
    n: int,
    steps: int = ANNEAL_STEPS,
    seed: int = 0,
    restarts: int = ANNEAL_RESTARTS,
    workers: int = 1,
    init: str = "path",
    t0: float = ANNEAL_T0,
    t_end: float = ANNEAL_T_END,
) -> SearchReport:
    """
    Edge-flip annealing that maximises e(G_2) over connected graphs with a
    triangle-free G_2. Infeasible flips are rejected outright. Restart r uses
    the r-th spawned child of SeedSequence(seed), so the outcome depends only
    on (n, steps, seed, restarts, init, schedule).
    """
    if n > GRAPH6_MAX_N:
        raise CapExceeded(f"anneal certificates are graph6 strings; n <= {GRAPH6_MAX_N}")
    start = time.perf_counter()
    initial_state(n, init)  # fail fast on bad init for this n
    seqs = np.random.SeedSequence(seed).spawn(max(1, restarts))
    jobs = [(n, steps, s, init, t0, t_end) for s in seqs]
    runs: List[AnnealRun] = _run_chunks(_anneal_once, jobs, workers, f"anneal n={n}")
    tally = BoundTally()
    tally.seen = tally.admissible = sum(r.feasible for r in runs) + len(runs)
    tally.max_pairs = max(r.best_pairs for r in runs)
    winners = sorted({r.best_graph6 for r in runs if r.best_pairs == tally.max_pairs})
    tally.certs, tally.certs_total = winners[:MAX_CERTS], len(winners)
    for r in runs:
        if r.best_pairs > tally.hyp_max and theorem_hypothesis_holds(decode_graph6(r.best_graph6)) is not None:
            tally.hyp_max = r.best_pairs
    report = SearchReport.from_tally(n, Mode.ANNEAL, tally, source=f"anneal:{init}",
                                     wall_time=time.perf_counter() - start, worker_count=max(1, workers))
    _debug(f"anneal n={n}: best e(G_2)={report.max_pairs} (bound {report.bound_value})")
    return report


def validate_certificate(g6: str, max_pairs: int) -> bool:
    """Connected, triangle-free G_2, and exactly max_pairs pairs at distance two."""
    g = decode_graph6(g6)
    if not is_connected(g):
        return False
    rows2 = g2_rows(g)
    return rows_triangle_free(rows2) and rows_pair_count(rows2) == max_pairs
