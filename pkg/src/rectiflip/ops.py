"""Elementary reconfiguration operations: flip and rotate.

Flip toggles the orientation of a segment that has no other segment's
endpoint on it; the new segment spans the union rectangle of the two faces
the old segment separated, found by shooting rays from the point in both
perpendicular directions (the first wall whose open span contains the ray
line is that face's wall).

Rotate acts at a T-junction: segment j's end c rests on a perpendicular
host i.  Let a be i's end on c's side of i's point.  Legal when no other
attachment sits on i strictly between c and a.  The host gives up the
portion beyond c (its a end re-attaches onto j at the junction), and j
extends straight through the junction to the first wall on the far side.
The inverse is again a rotate, at the junction the host's moved end just
landed on.

The module-level `flip` / `rotate` / `shorten_and_flip` are pure: they
return a new Rectangulation.  Canonicalization drivers and random walks
use the mutable `_Work` view; both run the same code, the pure functions
just thaw, apply, refreeze.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Optional

from .core import (
    BOTTOM,
    LEFT,
    RIGHT,
    TOP,
    PointSet,
    Rectangulation,
    boundary_end,
)


class IllegalFlip(ValueError):
    """Flip attempted on a segment with endpoints of other segments on it."""


class IllegalRotate(ValueError):
    """Rotate attempted at an end not forming a rotatable junction."""


@dataclass(frozen=True)
class Move:
    """One reconfiguration step.  end: 0 = low, 1 = high (rotate only)."""

    kind: str
    seg: int
    end: Optional[int] = None

    @staticmethod
    def flip(i: int) -> "Move":
        return Move("flip", i)

    @staticmethod
    def rotate(j: int, end: int) -> "Move":
        return Move("rotate", j, end)

    def to_jsonable(self) -> dict:
        if self.kind == "flip":
            return {"op": "flip", "p": self.seg}
        return {"op": "rotate", "seg": self.seg, "end": "low" if self.end == 0 else "high"}

    @staticmethod
    def from_jsonable(obj: dict) -> "Move":
        if obj["op"] == "flip":
            return Move.flip(int(obj["p"]))
        return Move.rotate(int(obj["seg"]), 0 if obj["end"] == "low" else 1)


@dataclass(frozen=True)
class OpRec:
    """What an applied operation did, for auditors and tests.

    Pieces are (orient, pos, lo, hi) portions of segments removed from or
    inserted into the picture.  Flip pieces are split at the segment's
    point; rotate pieces never contain their point.  `inverse` is the move
    that undoes this one from the resulting state.
    """

    move: Move
    removed: tuple[tuple, ...]
    inserted: tuple[tuple, ...]
    inverse: Move
    junction: Optional[tuple] = None  # rotate only: the fixed junction point


def _split_piece(orient: str, pos, lo, hi, at) -> tuple[tuple, ...]:
    return ((orient, pos, lo, at), (orient, pos, at, hi))


class _Work:
    """Mutable workspace over one point set.

    Maintains, per segment: orientation, end attachment codes, realized
    span, the set of (segment, end) pairs attached onto it.  Static sorted
    point orders back the ray shoots.
    """

    __slots__ = (
        "P", "n", "pts", "x0", "y0", "x1", "y1",
        "orient", "lo", "hi", "span_lo", "span_hi",
        "attachers", "by_x", "by_y", "xs", "ys",
    )

    def __init__(self, P: PointSet, r: Rectangulation):
        n = P.n
        if r.n != n:
            raise ValueError("state size != point count")
        self.P = P
        self.n = n
        self.pts = P.points
        self.x0, self.y0, self.x1, self.y1 = P.rect
        self.orient = list(r.orient)
        self.lo = [a for a, _ in r.attach]
        self.hi = [b for _, b in r.attach]
        self.span_lo = [0] * n
        self.span_hi = [0] * n
        self.attachers: list[set] = [set() for _ in range(n)]
        for i in range(n):
            self._realize_span(i)
            for end, t in ((0, self.lo[i]), (1, self.hi[i])):
                if t >= 0:
                    self.attachers[t].add((i, end))
        self.by_x = sorted(range(n), key=lambda k: self.pts[k][0])
        self.by_y = sorted(range(n), key=lambda k: self.pts[k][1])
        self.xs = [self.pts[k][0] for k in self.by_x]
        self.ys = [self.pts[k][1] for k in self.by_y]

    def _realize_span(self, i: int) -> None:
        lo, hi = self.lo[i], self.hi[i]
        if self.orient[i] == "V":
            self.span_lo[i] = self.pts[lo][1] if lo >= 0 else self.y0
            self.span_hi[i] = self.pts[hi][1] if hi >= 0 else self.y1
        else:
            self.span_lo[i] = self.pts[lo][0] if lo >= 0 else self.x0
            self.span_hi[i] = self.pts[hi][0] if hi >= 0 else self.x1

    def state(self) -> Rectangulation:
        return Rectangulation(
            tuple(self.orient), tuple(zip(self.lo, self.hi))
        )

    def att_count(self, i: int) -> int:
        return len(self.attachers[i])

    def attachments_on(self, i: int) -> list[tuple]:
        """(position along i, attacher, attacher's end), sorted."""
        ax = 1 if self.orient[i] == "V" else 0
        return sorted((self.pts[k][ax], k, ke) for k, ke in self.attachers[i])

    # -- ray shooting -----------------------------------------------------

    def shoot_x(self, y, x, sign: int) -> tuple[int, int]:
        """First vertical wall from (x, y) going right (sign>0) or left.

        A wall is a vertical segment whose open y-span contains y; walls
        exactly at x do not count.  Falls back to the side of R.
        """
        if sign < 0:
            rng = range(bisect.bisect_left(self.xs, x) - 1, -1, -1)
        else:
            rng = range(bisect.bisect_right(self.xs, x), self.n)
        for t in rng:
            k = self.by_x[t]
            if self.orient[k] == "V" and self.span_lo[k] < y < self.span_hi[k]:
                return k, self.pts[k][0]
        return (LEFT, self.x0) if sign < 0 else (RIGHT, self.x1)

    def shoot_y(self, x, y, sign: int) -> tuple[int, int]:
        """First horizontal wall from (x, y) going up (sign>0) or down."""
        if sign < 0:
            rng = range(bisect.bisect_left(self.ys, y) - 1, -1, -1)
        else:
            rng = range(bisect.bisect_right(self.ys, y), self.n)
        for t in rng:
            k = self.by_y[t]
            if self.orient[k] == "H" and self.span_lo[k] < x < self.span_hi[k]:
                return k, self.pts[k][1]
        return (BOTTOM, self.y0) if sign < 0 else (TOP, self.y1)

    # -- attachment bookkeeping -------------------------------------------

    def _detach(self, i: int, end: int) -> None:
        t = self.lo[i] if end == 0 else self.hi[i]
        if t >= 0:
            self.attachers[t].discard((i, end))

    def _attach(self, i: int, end: int, target: int, pos) -> None:
        if end == 0:
            self.lo[i] = target
            self.span_lo[i] = pos
        else:
            self.hi[i] = target
            self.span_hi[i] = pos
        if target >= 0:
            self.attachers[target].add((i, end))

    # -- operations -------------------------------------------------------

    def can_flip(self, i: int) -> bool:
        return not self.attachers[i]

    def flip(self, i: int) -> OpRec:
        if self.attachers[i]:
            raise IllegalFlip(f"segment {i} carries {len(self.attachers[i])} attachments")
        x, y = self.pts[i]
        if self.orient[i] == "V":
            removed = _split_piece("V", x, self.span_lo[i], self.span_hi[i], y)
            self._detach(i, 0)
            self._detach(i, 1)
            self.orient[i] = "H"
            lt, lp = self.shoot_x(y, x, -1)
            rt, rp = self.shoot_x(y, x, +1)
            self._attach(i, 0, lt, lp)
            self._attach(i, 1, rt, rp)
            inserted = _split_piece("H", y, lp, rp, x)
        else:
            removed = _split_piece("H", y, self.span_lo[i], self.span_hi[i], x)
            self._detach(i, 0)
            self._detach(i, 1)
            self.orient[i] = "V"
            bt, bp = self.shoot_y(x, y, -1)
            tt, tp = self.shoot_y(x, y, +1)
            self._attach(i, 0, bt, bp)
            self._attach(i, 1, tt, tp)
            inserted = _split_piece("V", x, bp, tp, y)
        m = Move.flip(i)
        return OpRec(m, removed, inserted, m)

    def _rotate_ctx(self, j: int, end: int):
        """Junction data for rotating j's given end, or an error string."""
        host = self.lo[j] if end == 0 else self.hi[j]
        if host < 0:
            return "end rests on the boundary"
        ax = 1 if self.orient[host] == "V" else 0  # coordinate along host
        cpos = self.pts[j][ax]
        hpos = self.pts[host][ax]
        a_end = 1 if cpos > hpos else 0
        # c must be the outermost attachment on its side of the host's point
        for k, ke in self.attachers[host]:
            if (k, ke) == (j, end):
                continue
            kpos = self.pts[k][ax]
            if (kpos > cpos) if a_end == 1 else (kpos < cpos):
                return f"attachment of segment {k} blocks the junction"
        return host, a_end, cpos

    def can_rotate(self, j: int, end: int) -> bool:
        return not isinstance(self._rotate_ctx(j, end), str)

    def rotate(self, j: int, end: int) -> OpRec:
        ctx = self._rotate_ctx(j, end)
        if isinstance(ctx, str):
            raise IllegalRotate(f"segment {j} end {end}: {ctx}")
        host, a_end, cpos = ctx
        # host loses its portion beyond the junction
        a_old_pos = self.span_hi[host] if a_end == 1 else self.span_lo[host]
        hp = self.pts[host][0] if self.orient[host] == "V" else self.pts[host][1]
        removed = (
            (self.orient[host], hp, cpos, a_old_pos)
            if a_end == 1
            else (self.orient[host], hp, a_old_pos, cpos),
        )
        self._detach(host, a_end)
        self._attach(host, a_end, j, cpos)
        # j's end leaves the junction and extends straight through
        self._detach(j, end)
        sign = -1 if end == 0 else +1
        if self.orient[j] == "H":
            jy = self.pts[j][1]
            jend = self.pts[host][0]
            t, pos = self.shoot_x(jy, jend, sign)
            inserted = (("H", jy, pos, jend) if sign < 0 else ("H", jy, jend, pos),)
            junction = (jend, jy)
        else:
            jx = self.pts[j][0]
            jend = self.pts[host][1]
            t, pos = self.shoot_y(jx, jend, sign)
            inserted = (("V", jx, pos, jend) if sign < 0 else ("V", jx, jend, pos),)
            junction = (jx, jend)
        self._attach(j, end, t, pos)
        return OpRec(
            Move.rotate(j, end), removed, inserted, Move.rotate(host, a_end), junction
        )

    def apply(self, m: Move) -> OpRec:
        if m.kind == "flip":
            return self.flip(m.seg)
        return self.rotate(m.seg, m.end)

    def legal_flips(self) -> list[int]:
        return [i for i in range(self.n) if not self.attachers[i]]

    def legal_rotates(self) -> list[tuple[int, int]]:
        out = []
        for j in range(self.n):
            for end in (0, 1):
                if self.can_rotate(j, end):
                    out.append((j, end))
        return out

    def shorten_and_flip(self, s: int) -> list[Move]:
        """Clear every attachment off segment s by rotations, then flip it.

        Always chooses a legal junction: the attachment nearest the low end
        when the point is beyond it, else the one nearest the high end.
        Each rotation removes one attachment from s and never adds one, so
        this runs exactly att_count(s) rotations plus one flip.
        """
        ax = 1 if self.orient[s] == "V" else 0
        ppos = self.pts[s][ax]
        moves = []
        while self.attachers[s]:
            atts = self.attachments_on(s)
            c1pos, k1, ke1 = atts[0]
            if c1pos < ppos:
                m = Move.rotate(k1, ke1)
            else:
                _, k2, ke2 = atts[-1]
                m = Move.rotate(k2, ke2)
            self.apply(m)
            moves.append(m)
        self.flip(s)
        moves.append(Move.flip(s))
        return moves

    # -- diagnostics ------------------------------------------------------

    def op_weight(self, rec: OpRec) -> int:
        """Endpoints of other segments on the op's closed pieces, own
        junction excluded.  Provably zero for every legal operation; kept
        honest so a bookkeeping bug would show up as nonzero weight."""
        ends = []
        for k in range(self.n):
            if self.orient[k] == "V":
                x = self.pts[k][0]
                ends.append((k, x, self.span_lo[k]))
                ends.append((k, x, self.span_hi[k]))
            else:
                y = self.pts[k][1]
                ends.append((k, self.span_lo[k], y))
                ends.append((k, self.span_hi[k], y))
        owner_removed = rec.move.seg if rec.move.kind == "flip" else rec.inverse.seg
        owner_inserted = rec.move.seg
        w = 0
        for pieces, owner in ((rec.removed, owner_removed), (rec.inserted, owner_inserted)):
            for orient, pos, lo, hi in pieces:
                for k, ex, ey in ends:
                    if k == owner:
                        continue
                    on = (
                        ex == pos and lo <= ey <= hi
                        if orient == "V"
                        else ey == pos and lo <= ex <= hi
                    )
                    if on and (ex, ey) != rec.junction:
                        w += 1
        return w


# ---------------------------------------------------------------------------
# pure wrappers


def flip(P: PointSet, r: Rectangulation, i: int) -> Rectangulation:
    w = _Work(P, r)
    w.flip(i)
    return w.state()


def rotate(P: PointSet, r: Rectangulation, j: int, end: int) -> Rectangulation:
    w = _Work(P, r)
    w.rotate(j, end)
    return w.state()


def apply_move(P: PointSet, r: Rectangulation, m: Move) -> Rectangulation:
    w = _Work(P, r)
    w.apply(m)
    return w.state()


def legal_flips(P: PointSet, r: Rectangulation) -> list[int]:
    return _Work(P, r).legal_flips()


def legal_rotates(P: PointSet, r: Rectangulation) -> list[tuple[int, int]]:
    return _Work(P, r).legal_rotates()


def rotate_inverse_move(P: PointSet, r: Rectangulation, j: int, end: int) -> Move:
    """The move that will undo rotate(j, end), computed without applying."""
    ctx = _Work(P, r)._rotate_ctx(j, end)
    if isinstance(ctx, str):
        raise IllegalRotate(f"segment {j} end {end}: {ctx}")
    host, a_end, _ = ctx
    return Move.rotate(host, a_end)


def shorten_and_flip(
    P: PointSet, r: Rectangulation, s: int
) -> tuple[Rectangulation, list[Move]]:
    w = _Work(P, r)
    moves = w.shorten_and_flip(s)
    return w.state(), moves
