"""Linear-operation canonicalization for diagonal point sets.

A point set is diagonal when sorting by x and sorting by y give the same
order.  For such instances any rectangulation reaches the all-vertical
state in O(n) flips and rotates, through four phases:

1.  no_three_parallel: break every run of three or more equally oriented
    consecutive segments with clear-and-flips, at most floor(n/3) flips.
2.  build_staircase: consecutive perpendicular segments always meet in a
    corner (forced by the diagonal layout); a run of two parallel segments
    followed by a perpendicular one needs its corner rebuilt when the
    perpendicular segment's near end rests on the run's second member.
    Rotating the attachments off that member outward-first hands the
    corner to the run's first member.  The first member of every run now
    carries the staircase path; second members hang in pockets, horizontal
    skips above the path, vertical skips below.
3.  sweep_regions: walk the region above the path top-down, flipping each
    horizontal skip to a vertical and trimming each staircase horizontal
    back to its entry corner; every rotation extends some vertical clear
    to the top wall because everything higher was already dealt with.
    Then the mirror sweep below, bottom-up, extending verticals to the
    bottom wall.  Every operation here parks at least one more segment
    end on the top or bottom wall, which bounds phases 3 and 4 together
    by 2n operations.
4.  finish_strips: between consecutive full-height verticals there is now
    one staircase horizontal and at most two full-height companions
    resting on it (one from below on its left, one from above on its
    right).  Rotate the companions' junctions through, then flip the
    horizontal; one operation per point in the strip.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import PointSet, Rectangulation
from .ops import Move, _Work


class NotDiagonal(ValueError):
    """Instance is not sorted the same way by x and by y."""


class PhasePreconditionViolated(RuntimeError):
    """State handed to a phase lacks the structure the phase relies on."""


class StripTooLarge(RuntimeError):
    """A strip holds more segments than a staircase can produce."""


def is_diagonal(P: PointSet) -> bool:
    pts = P.points
    return all(
        pts[i][0] < pts[i + 1][0] and pts[i][1] < pts[i + 1][1]
        for i in range(len(pts) - 1)
    )


def require_diagonal(P: PointSet) -> None:
    if not is_diagonal(P):
        raise NotDiagonal("points are not increasing in both coordinates")


def _has_triple(o, i: int) -> bool:
    return o[i] == o[i + 1] == o[i + 2]


def _phase1(w: _Work) -> list[Move]:
    """Break parallel runs.  On a violating triple starting at i, flip the
    third member when the run continues past it, else the middle one; the
    flipped segment ends up flanked by perpendicular segments on both
    sides, so no new violation ever appears at a lower index."""
    moves: list[Move] = []
    o = w.orient
    n = w.n
    i = 0
    while i + 2 < n:
        if _has_triple(o, i):
            if i + 3 < n and o[i + 3] == o[i]:
                t = i + 2
            else:
                t = i + 1
            moves += w.shorten_and_flip(t)
        else:
            i += 1
    return moves


def _point_pos_along(w: _Work, host: int) -> int:
    """Coordinate of the host's own point along the host's direction."""
    return w.pts[host][0] if w.orient[host] == "H" else w.pts[host][1]


def _phase2(w: _Work) -> list[Move]:
    moves: list[Move] = []
    o = w.orient
    n = w.n
    for j in range(n - 2):
        if not (o[j] == o[j + 1] != o[j + 2]):
            continue
        b, c = j + 1, j + 2
        if w.lo[c] != b:
            continue  # corner already rests below the run's second member
        pb = _point_pos_along(w, b)
        while True:
            beyond = [t for t in w.attachments_on(b) if t[0] > pb]
            if not beyond:
                raise PhasePreconditionViolated(
                    f"segment {c} lost its junction on {b} during the cascade"
                )
            pos, k, ke = max(beyond)
            w.rotate(k, ke)
            moves.append(Move.rotate(k, ke))
            if (k, ke) == (c, 0):
                break
    return moves


def _classify(o) -> tuple[list[int], set[int]]:
    """Staircase members and skipped run-second members.

    Requires runs of length at most 2 (phase 1's postcondition)."""
    n = len(o)
    for i in range(n - 2):
        if _has_triple(o, i):
            raise PhasePreconditionViolated(f"three parallel segments at {i}")
    path: list[int] = []
    skip: set[int] = set()
    j = 0
    while j < n:
        path.append(j)
        if j + 1 < n and o[j + 1] == o[j]:
            skip.add(j + 1)
            j += 2
        else:
            j += 1
    return path, skip


def _phase3(w: _Work) -> list[Move]:
    moves: list[Move] = []
    path, skip = _classify(w.orient)
    horiz = [t for t in range(w.n) if w.orient[t] == "H"]
    at = {p: idx for idx, p in enumerate(path)}

    def neighbor_column(t: int, step: int):
        idx = at[t] + step
        if 0 <= idx < len(path):
            return w.pts[path[idx]][0]
        return None

    def rotate_checked(pos, k, ke, want_end):
        if ke != want_end:
            raise PhasePreconditionViolated(
                f"attachment of {k} at {pos} points the wrong way"
            )
        w.rotate(k, ke)
        moves.append(Move.rotate(k, ke))

    # above the staircase, top level first
    for t in sorted(horiz, key=lambda t: -w.pts[t][1]):
        if t in skip:
            moves += w.shorten_and_flip(t)
            continue
        x_in = neighbor_column(t, -1)
        if x_in is None:
            continue  # staircase enters along this segment from the left wall
        while True:
            left = [a for a in w.attachments_on(t) if a[0] < x_in]
            if not left:
                break
            rotate_checked(*min(left), want_end=1)
        for pos, k, ke in w.attachments_on(t):
            if pos == x_in:
                rotate_checked(pos, k, ke, want_end=1)
                break

    # below the staircase, bottom level first; skips stay for phase 4
    for t in sorted(horiz, key=lambda t: w.pts[t][1]):
        if t in skip:
            continue
        x_out = neighbor_column(t, +1)
        if x_out is None:
            continue
        while True:
            right = [a for a in w.attachments_on(t) if a[0] > x_out]
            if not right:
                break
            rotate_checked(*max(right), want_end=0)
        for pos, k, ke in w.attachments_on(t):
            if pos == x_out:
                rotate_checked(pos, k, ke, want_end=0)
                break
    return moves


def _phase4(w: _Work) -> list[Move]:
    moves: list[Move] = []
    path, skip = _classify(w.orient)
    for t in path:
        if w.orient[t] != "H":
            continue
        x_t = w.pts[t][0]
        below = [(pos, k, ke) for pos, k, ke in w.attachments_on(t) if ke == 1]
        above = [(pos, k, ke) for pos, k, ke in w.attachments_on(t) if ke == 0]
        if len(below) > 1 or len(above) > 1:
            raise StripTooLarge(
                f"strip of segment {t}: {len(below)} below, {len(above)} above"
            )
        if below and not below[0][0] < x_t:
            raise PhasePreconditionViolated(f"below companion right of point {t}")
        if above and not above[0][0] > x_t:
            raise PhasePreconditionViolated(f"above companion left of point {t}")
        for pos, k, ke in below + above:
            w.rotate(k, ke)
            moves.append(Move.rotate(k, ke))
        moves.append(Move.flip(t))
        w.flip(t)
    return moves


_PHASES = (
    ("no_three_parallel", _phase1),
    ("build_staircase", _phase2),
    ("sweep_regions", _phase3),
    ("finish_strips", _phase4),
)


@dataclass
class DiagResult:
    state: Rectangulation
    moves: list
    phase_ops: dict  # phase name -> operation count


def canonicalize_diagonal(P: PointSet, r: Rectangulation, on_phase=None) -> DiagResult:
    """All-vertical canonicalization for a diagonal instance, O(n) ops."""
    require_diagonal(P)
    w = _Work(P, r)
    moves: list[Move] = []
    phase_ops = {}
    for name, func in _PHASES:
        phase_moves = func(w)
        phase_ops[name] = len(phase_moves)
        moves += phase_moves
        if on_phase is not None:
            on_phase(w, name, phase_moves)
    return DiagResult(w.state(), moves, phase_ops)


# pure per-phase entry points


def _pure(func):
    def run(P: PointSet, r: Rectangulation) -> tuple[Rectangulation, list[Move]]:
        require_diagonal(P)
        w = _Work(P, r)
        ms = func(w)
        return w.state(), ms

    return run


no_three_parallel = _pure(_phase1)
build_staircase = _pure(_phase2)
sweep_regions = _pure(_phase3)
finish_strips = _pure(_phase4)
