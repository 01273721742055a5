"""Operation-level checks.

The legality oracles here recompute flippability and rotatability straight
from the definitions by scanning the whole state, with no bookkeeping; the
fast workspace must agree with them on every state a random walk visits.
The two-point worked example is traced by hand and frozen.
"""

import random

import pytest

from rectiflip.core import (
    BOTTOM,
    LEFT,
    RIGHT,
    TOP,
    PointSet,
    Rectangulation,
    all_horizontal,
    all_vertical,
    diagonal_points,
    permutation_points,
    realize,
    validate,
)
from rectiflip.ops import (
    IllegalFlip,
    IllegalRotate,
    Move,
    _Work,
    apply_move,
    flip,
    legal_flips,
    legal_rotates,
    rotate,
    rotate_inverse_move,
    shorten_and_flip,
)
from rectiflip.random_states import random_state, random_walk

P2 = diagonal_points(2)
STRUCT_A = Rectangulation(("V", "H"), ((BOTTOM, TOP), (0, RIGHT)))


# ---------------------------------------------------------------------------
# definition-literal oracles


def naive_legal_flips(P, r):
    attached = set()
    for k in range(r.n):
        for t in r.attach[k]:
            if t >= 0:
                attached.add(t)
    return sorted(i for i in range(r.n) if i not in attached)


def naive_legal_rotates(P, r):
    pts = P.points
    out = []
    for j in range(r.n):
        for end in (0, 1):
            host = r.attach[j][end]
            if host < 0:
                continue
            ax = 1 if r.orient[host] == "V" else 0
            cpos = pts[j][ax]
            hi_side = cpos > pts[host][ax]
            ok = True
            for k in range(r.n):
                for ke in (0, 1):
                    if (k, ke) == (j, end) or r.attach[k][ke] != host:
                        continue
                    kpos = pts[k][ax]
                    if kpos > cpos if hi_side else kpos < cpos:
                        ok = False
            if ok:
                out.append((j, end))
    return out


def naive_shoot(P, r, x, y, axis, sign):
    segs = realize(P, r)
    best = None
    for k, s in enumerate(segs):
        if axis == "x":
            if s.orient != "V" or not (s.lo < y < s.hi):
                continue
            pos = s.pos
        else:
            if s.orient != "H" or not (s.lo < x < s.hi):
                continue
            pos = s.pos
        ref = x if axis == "x" else y
        if (pos < ref) if sign < 0 else (pos > ref):
            d = abs(pos - ref)
            if best is None or d < best[0]:
                best = (d, k, pos)
    if best is not None:
        return best[1], best[2]
    x0, y0, x1, y1 = P.rect
    if axis == "x":
        return (LEFT, x0) if sign < 0 else (RIGHT, x1)
    return (BOTTOM, y0) if sign < 0 else (TOP, y1)


def check_against_oracles(P, r):
    w = _Work(P, r)
    assert sorted(w.legal_flips()) == naive_legal_flips(P, r)
    assert sorted(w.legal_rotates()) == sorted(naive_legal_rotates(P, r))
    rng = random.Random(7)
    probes = list(P.points) + [
        (rng.randrange(P.rect[0], P.rect[2] + 1), rng.randrange(P.rect[1], P.rect[3] + 1))
        for _ in range(10)
    ]
    for x, y in probes:
        for sign in (-1, 1):
            assert w.shoot_x(y, x, sign) == naive_shoot(P, r, x, y, "x", sign)
            assert w.shoot_y(x, y, sign) == naive_shoot(P, r, x, y, "y", sign)


def recheck_workspace(P, w):
    """Incrementally maintained workspace vs one rebuilt from scratch."""
    fresh = _Work(P, w.state())
    assert w.orient == fresh.orient
    assert w.lo == fresh.lo and w.hi == fresh.hi
    assert w.span_lo == fresh.span_lo and w.span_hi == fresh.span_hi
    assert w.attachers == fresh.attachers


# ---------------------------------------------------------------------------
# worked two-point example, every value by hand


def test_flip_worked_example():
    # seg1's horizontal separates the two right-hand faces; flipping it
    # spans their union, the full right column
    r = flip(P2, STRUCT_A, 1)
    assert r == all_vertical(2)
    # and back: an involution
    assert flip(P2, r, 1) == STRUCT_A
    # flipping seg0 from the two-column state hangs it off seg1
    r2 = flip(P2, all_vertical(2), 0)
    assert r2 == Rectangulation(("H", "V"), ((LEFT, 1), (BOTTOM, TOP)))
    assert flip(P2, r2, 0) == all_vertical(2)


def test_flip_illegal_when_attached():
    with pytest.raises(IllegalFlip):
        flip(P2, STRUCT_A, 0)  # seg1's end rests on seg0
    assert legal_flips(P2, STRUCT_A) == [1]


def test_rotate_worked_example():
    # junction: seg1's low end at (1,2) on seg0.  Host keeps its lower
    # part, its top end lands on seg1, seg1 runs through to the left wall.
    r = rotate(P2, STRUCT_A, 1, 0)
    assert r == Rectangulation(("V", "H"), ((BOTTOM, 1), (LEFT, RIGHT)))
    assert validate(P2, r) == []
    # inverse is the rotate at the junction the host's end just created
    assert rotate_inverse_move(P2, STRUCT_A, 1, 0) == Move.rotate(0, 1)
    assert rotate(P2, r, 0, 1) == STRUCT_A


def test_rotate_illegal_cases():
    with pytest.raises(IllegalRotate):
        rotate(P2, STRUCT_A, 1, 1)  # right end is on the boundary
    with pytest.raises(IllegalRotate):
        rotate(P2, all_vertical(2), 0, 0)

    # two horizontals attached to one vertical from the same side: only the
    # outermost junction may rotate
    P = diagonal_points(3)
    r = Rectangulation(
        ("V", "H", "H"), ((BOTTOM, TOP), (0, RIGHT), (0, RIGHT))
    )
    assert validate(P, r) == []
    assert sorted(legal_rotates(P, r)) == [(2, 0)]
    with pytest.raises(IllegalRotate):
        rotate(P, r, 1, 0)


def test_shorten_and_flip_worked():
    r, moves = shorten_and_flip(P2, STRUCT_A, 0)
    assert moves == [Move.rotate(1, 0), Move.flip(0)]
    assert r == all_horizontal(2)

    # the two-attachment ladder clears outermost first, then flips
    P = diagonal_points(3)
    r0 = Rectangulation(("V", "H", "H"), ((BOTTOM, TOP), (0, RIGHT), (0, RIGHT)))
    r, moves = shorten_and_flip(P, r0, 0)
    assert moves == [Move.rotate(2, 0), Move.rotate(1, 0), Move.flip(0)]
    assert r == all_horizontal(3)
    assert validate(P, r) == []


def test_op_piece_records():
    w = _Work(P2, STRUCT_A)
    rec = w.flip(1)
    assert rec.removed == (("H", 2, 1, 2), ("H", 2, 2, 3))
    assert rec.inserted == (("V", 2, 0, 2), ("V", 2, 2, 3))
    assert rec.inverse == Move.flip(1)
    assert w.op_weight(rec) == 0

    w = _Work(P2, STRUCT_A)
    rec = w.rotate(1, 0)
    assert rec.removed == (("V", 1, 2, 3),)  # host's upper part
    assert rec.inserted == (("H", 2, 0, 1),)  # seg1's run to the left wall
    assert rec.junction == (1, 2)
    assert rec.inverse == Move.rotate(0, 1)
    assert w.op_weight(rec) == 0


def test_oracles_on_exhaustive_n2():
    from test_core import enumerate_structures

    for r in enumerate_structures(2):
        if not validate(P2, r):
            check_against_oracles(P2, r)


# ---------------------------------------------------------------------------
# properties along random walks


def walk_and_check(P, seed, steps=60):
    r = all_horizontal(P.n)

    def on_op(w, rec):
        s = w.state()
        assert validate(P, s) == []
        recheck_workspace(P, w)
        assert w.op_weight(rec) == 0

    final, stats = random_walk(P, r, steps, seed=seed, with_weights=True, on_op=on_op)
    assert stats["flips"] + stats["rotates"] == steps
    assert stats["max_weight"] == 0
    assert validate(P, final) == []
    return final


def test_walks_stay_valid():
    for n, seed in ((3, 1), (5, 2), (6, 3)):
        walk_and_check(diagonal_points(n), seed)
    walk_and_check(permutation_points((2, 0, 3, 1, 4)), seed=4)


def test_legality_oracles_along_walk():
    P = diagonal_points(5)
    r = all_horizontal(5)
    rng = random.Random(11)
    for _ in range(40):
        check_against_oracles(P, r)
        moves = [Move.flip(i) for i in legal_flips(P, r)] + [
            Move.rotate(j, e) for j, e in legal_rotates(P, r)
        ]
        r = apply_move(P, r, rng.choice(moves))
        assert validate(P, r) == []


def test_flip_involution_everywhere():
    P = diagonal_points(4)
    r = random_state(P, seed=9)
    for _ in range(15):
        for i in legal_flips(P, r):
            r2 = flip(P, r, i)
            assert validate(P, r2) == []
            assert flip(P, r2, i) == r
        r, _ = random_walk(P, r, 1, seed=len(r.orient))


def test_rotate_inverse_everywhere():
    P = permutation_points((1, 3, 0, 2))
    r = random_state(P, seed=5)
    seen_any = False
    for step in range(15):
        for j, end in legal_rotates(P, r):
            inv = rotate_inverse_move(P, r, j, end)
            r2 = rotate(P, r, j, end)
            assert validate(P, r2) == []
            assert rotate(P, r2, inv.seg, inv.end) == r
            seen_any = True
        r, _ = random_walk(P, r, 1, seed=100 + step)
    assert seen_any


def test_shorten_and_flip_op_count():
    # ops used = attachments cleared + the final flip, exactly
    P = diagonal_points(6)
    for seed in range(6):
        r = random_state(P, seed=seed)
        w = _Work(P, r)
        for s in range(P.n):
            cnt = w.att_count(s)
            r2, moves = shorten_and_flip(P, r, s)
            assert len(moves) == cnt + 1
            assert moves[-1] == Move.flip(s)
            assert validate(P, r2) == []
            assert r2.orient[s] != r.orient[s]


def test_walk_determinism():
    P = diagonal_points(7)
    a, sa = random_walk(P, all_horizontal(7), 50, seed=42)
    b, sb = random_walk(P, all_horizontal(7), 50, seed=42)
    assert a == b and sa == sb
