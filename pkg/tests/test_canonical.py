"""Visibility-sweep and canonicalization checks.

naive_bar_visibility is the reference: per pair of bars it samples every
critical x in the closed overlap (blocker ends clipped in) plus exact
rational midpoints between consecutive criticals, so any uncovered open
interval or single-point witness is hit.  The sweep must agree with it on
everything a random walk produces.
"""

import math
import random
from fractions import Fraction
from itertools import combinations

from rectiflip.core import (
    BOTTOM,
    LEFT,
    RIGHT,
    TOP,
    Rectangulation,
    all_horizontal,
    all_vertical,
    diagonal_points,
    permutation_points,
    realize,
    validate,
)
from rectiflip.canonical import (
    CanonResult,
    bar_visibility,
    canonicalize,
    greedy_independent_set,
)
from rectiflip.ops import apply_move
from rectiflip.random_states import random_state


def naive_bar_visibility(P, r):
    segs = realize(P, r)
    bars = [(i, s.pos, s.lo, s.hi) for i, s in enumerate(segs) if s.orient == "H"]
    edges = set()
    for (i, yi, li, ri), (j, yj, lj, rj) in combinations(bars, 2):
        lo, hi = max(li, lj), min(ri, rj)
        if lo > hi:
            continue
        ya, yb = min(yi, yj), max(yi, yj)
        between = [(lb, rb) for (k, yk, lb, rb) in bars if ya < yk < yb]
        crit = {Fraction(lo), Fraction(hi)}
        for lb, rb in between:
            for c in (lb, rb):
                if lo <= c <= hi:
                    crit.add(Fraction(c))
        cs = sorted(crit)
        cands = cs + [(cs[t] + cs[t + 1]) / 2 for t in range(len(cs) - 1)]
        if any(
            all(not (lb <= c <= rb) for lb, rb in between) for c in cands
        ):
            edges.add((i, j) if i < j else (j, i))
    return edges


def test_visibility_slabs():
    # stacked full-width bars: each sees only its vertical neighbors
    P = diagonal_points(5)
    assert bar_visibility(P, all_horizontal(5)) == {(0, 1), (1, 2), (2, 3), (3, 4)}
    assert bar_visibility(P, all_vertical(5)) == set()


def test_visibility_single_point_witness():
    # two horizontals meeting the same vertical from opposite sides share
    # exactly one x; that point is a witness
    P = diagonal_points(3)
    r = Rectangulation(("H", "V", "H"), ((LEFT, 1), (BOTTOM, TOP), (1, RIGHT)))
    assert validate(P, r) == []
    assert bar_visibility(P, r) == {(0, 2)}
    assert naive_bar_visibility(P, r) == {(0, 2)}


def test_visibility_matches_naive_on_walks():
    for n, seeds in ((4, range(6)), (6, range(6)), (9, range(4))):
        P = diagonal_points(n)
        for seed in seeds:
            r = random_state(P, seed=seed)
            assert bar_visibility(P, r) == naive_bar_visibility(P, r)
    P = permutation_points((3, 0, 4, 1, 6, 2, 5))
    for seed in range(6):
        r = random_state(P, seed=seed)
        assert bar_visibility(P, r) == naive_bar_visibility(P, r)


def test_greedy_independent_set_small():
    # path: endpoints first
    assert greedy_independent_set(range(4), {(0, 1), (1, 2), (2, 3)}) == [0, 2]
    # star: all leaves
    assert greedy_independent_set(range(6), {(0, i) for i in range(1, 6)}) == [
        1, 2, 3, 4, 5,
    ]
    assert greedy_independent_set(range(3), {(0, 1), (1, 2), (0, 2)}) == [0]
    assert greedy_independent_set([], set()) == []


def test_greedy_independent_set_properties():
    rng = random.Random(3)
    for _ in range(60):
        m = rng.randrange(1, 14)
        verts = list(range(m))
        edges = set()
        for a, b in combinations(verts, 2):
            if rng.random() < 0.3:
                edges.add((a, b))
        chosen = greedy_independent_set(verts, edges)
        cset = set(chosen)
        assert all(not (a in cset and b in cset) for a, b in edges)
        # maximal: everything outside has a chosen neighbor
        adj = {v: set() for v in verts}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        assert all(v in cset or adj[v] & cset for v in verts)


def test_independent_set_sixth_on_visibility_graphs():
    for n, seed in ((6, 0), (9, 1), (12, 2), (12, 3)):
        P = diagonal_points(n)
        r = random_state(P, seed=seed)
        hs = [i for i in range(n) if r.orient[i] == "H"]
        if not hs:
            continue
        edges = bar_visibility(P, r)
        chosen = greedy_independent_set(hs, edges)
        assert len(chosen) >= math.ceil(len(hs) / 6)


def run_canonicalize_checked(P, r):
    def on_round(w, info):
        assert validate(P, w.state()) == []
        assert info["picked"] >= math.ceil(info["h"] / 6)

    res = canonicalize(P, r, on_round=on_round)
    assert res.state == all_vertical(P.n)
    assert validate(P, res.state) == []
    # horizontal count drops by exactly the picked count each round
    hs = sum(1 for o in r.orient if o == "H")
    for info in res.rounds:
        assert info["h"] == hs
        hs -= info["picked"]
    assert hs == 0
    if P.n:
        bound = math.floor(math.log(max(1, len(res.rounds) and sum(
            1 for o in r.orient if o == "H") or 1)) / math.log(6 / 5)) + 1
        assert len(res.rounds) <= max(1, bound)
    # the returned move list replays to the returned state
    replay = r
    for m in res.moves:
        replay = apply_move(P, replay, m)
    assert replay == res.state
    return res


def test_canonicalize_trivial():
    P = diagonal_points(1)
    res = run_canonicalize_checked(P, all_horizontal(1))
    assert [m.kind for m in res.moves] == ["flip"]
    assert len(res.rounds) == 1
    res = canonicalize(P, all_vertical(1))
    assert res.moves == [] and res.rounds == []


def test_canonicalize_small_instances():
    for n in (2, 3, 5, 8, 11):
        run_canonicalize_checked(diagonal_points(n), all_horizontal(n))
    for seed in range(4):
        P = permutation_points(random.Random(seed).sample(range(9), 9))
        run_canonicalize_checked(P, random_state(P, seed=seed + 50))


def test_canonicalize_deterministic():
    P = permutation_points((4, 1, 3, 0, 2))
    r = random_state(P, seed=8)
    a = canonicalize(P, r)
    b = canonicalize(P, r)
    assert a.moves == b.moves and a.state == b.state and a.rounds == b.rounds
