"""Canonicalization of an arbitrary rectangulation to the all-vertical one.

Each round: view the horizontal segments as bars, build their visibility
graph (two bars see each other when some x in both closed spans has no bar
strictly between them covering it), take an independent set greedily by
minimum degree, and clear-and-flip every member.  Bar visibility graphs
are planar, so every subgraph has a vertex of degree at most 5 and the
greedy set covers at least a sixth of the bars; the horizontal count
shrinks by a factor 5/6 or better per round, giving O(log n) rounds and
O(n log n) operations overall.

Members of an independent set do not lean on each other, so clearing one
never parks an attachment on another member; each member's clear cost is
its own attachment count.
"""

from __future__ import annotations

import bisect
import heapq
from dataclasses import dataclass
from collections import defaultdict

from .core import PointSet, Rectangulation
from .ops import Move, _Work


def _bars(w: _Work) -> list[int]:
    return [i for i in range(w.n) if w.orient[i] == "H"]


def _bar_visibility_w(w: _Work) -> set[tuple[int, int]]:
    """Visibility edges between horizontal segments, by plane sweep.

    Events at each distinct x: first insert every bar starting there and
    link it to its neighbors in the y-ordered active list, then delete
    every bar ending there and link the survivors flanking each maximal
    deleted run.  Insert-before-delete makes single-point overlaps (one
    bar ends where another starts) count, matching the closed-span
    semantics.  Deleting runs wholesale avoids phantom edges between two
    bars that end at the same x.
    """
    starters = defaultdict(list)
    enders = defaultdict(list)
    for i in _bars(w):
        starters[w.span_lo[i]].append(i)
        enders[w.span_hi[i]].append(i)
    edges: set[tuple[int, int]] = set()
    active: list[tuple[int, int]] = []  # (y, index), y strictly increasing

    def link(a: int, b: int) -> None:
        edges.add((a, b) if a < b else (b, a))

    for x in sorted(set(starters) | set(enders)):
        # place every starter before linking any: a same-x starter may land
        # between an earlier one and its would-be neighbor
        ins = starters[x]
        for i in ins:
            item = (w.pts[i][1], i)
            active.insert(bisect.bisect_left(active, item), item)
        for i in ins:
            pos = bisect.bisect_left(active, (w.pts[i][1], i))
            if pos > 0:
                link(active[pos - 1][1], i)
            if pos + 1 < len(active):
                link(i, active[pos + 1][1])
        if enders[x]:
            gone = set(enders[x])
            positions = [t for t, (_, i) in enumerate(active) if i in gone]
            run_start = 0
            while run_start < len(positions):
                run_end = run_start
                while (
                    run_end + 1 < len(positions)
                    and positions[run_end + 1] == positions[run_end] + 1
                ):
                    run_end += 1
                lo, hi = positions[run_start], positions[run_end]
                if lo > 0 and hi + 1 < len(active):
                    link(active[lo - 1][1], active[hi + 1][1])
                run_start = run_end + 1
            active = [it for it in active if it[1] not in gone]
    return edges


def bar_visibility(P: PointSet, r: Rectangulation) -> set[tuple[int, int]]:
    return _bar_visibility_w(_Work(P, r))


def greedy_independent_set(vertices, edges) -> list:
    """Greedy by minimum current degree, ties to the smallest vertex.

    On planar graphs every selection discards at most 6 vertices (itself
    plus at most 5 neighbors, since some vertex of minimum degree has
    degree <= 5), so the result has at least ceil(|V|/6) members.
    """
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    deg = {v: len(adj[v]) for v in vertices}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed = set()
    chosen = []
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        chosen.append(v)
        removed.add(v)
        for u in adj[v]:
            if u in removed:
                continue
            removed.add(u)
            for t in adj[u]:
                if t not in removed:
                    deg[t] -= 1
                    heapq.heappush(heap, (deg[t], t))
    return chosen


@dataclass
class CanonResult:
    state: Rectangulation
    moves: list
    rounds: list  # per-round dicts: h, edges, picked, ops


def canonicalize(P: PointSet, r: Rectangulation, on_round=None) -> CanonResult:
    """Drive r to the all-vertical state.  on_round, when given, is called
    with (workspace, round_info) after each round; raising from it aborts.
    """
    w = _Work(P, r)
    moves: list[Move] = []
    rounds = []
    while True:
        hs = _bars(w)
        if not hs:
            break
        edges = _bar_visibility_w(w)
        picked = greedy_independent_set(hs, edges)
        round_moves: list[Move] = []
        for s in sorted(picked):
            round_moves += w.shorten_and_flip(s)
        info = {
            "h": len(hs),
            "edges": len(edges),
            "picked": len(picked),
            "ops": len(round_moves),
        }
        moves += round_moves
        rounds.append(info)
        if on_round is not None:
            on_round(w, info)
    return CanonResult(w.state(), moves, rounds)
