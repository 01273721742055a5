"""Bit-reversal instances and the saturation audit behind the
n log n / 8 reconfiguration lower bound.

The instance P_k has 2^k points (m, y(m)) where y(m) reverses m's k bits,
inside the rectangle [-1, 2^k]^2.  For every bit position there is a family
of 2^(k-1) empty boxes, each spanned by a pair of points differing in that
single bit; boxes of one class are pairwise disjoint and every point is a
corner of exactly one box per class, k * 2^(k-1) boxes in all.

The saturation of a box is the fraction of its height covered by vertical
segments running through its closed extent (union measure, exact
rationals).  Every box starts at 0 in the all-horizontal state and must
reach 1 in the all-vertical state, while a single rotate changes the total
saturation by at most 2 and a flip by at most 4; dividing gives the lower
bound on the number of operations.  `audit_trace` replays a move sequence
and checks exactly that, cell by cell.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import PointSet, Rectangulation
from .ops import Move, OpRec, _Work

FLIP_DELTA_BOUND = 4
ROTATE_DELTA_BOUND = 2


def bit_reverse(m: int, k: int) -> int:
    y = 0
    for i in range(k):
        if m >> i & 1:
            y |= 1 << (k - 1 - i)
    return y


def bitrev_points(k: int, n: Optional[int] = None) -> PointSet:
    """P_k, optionally padded with diagonal points up to n total.

    Padding points (2^k + t, 2^k + t) sit above and right of the core
    block, so they disturb none of the boxes.
    """
    base = 1 << k
    if n is None:
        n = base
    if n < base:
        raise ValueError(f"n={n} smaller than 2^k={base}")
    pts = [(m, bit_reverse(m, k)) for m in range(base)]
    pts += [(base + t, base + t) for t in range(n - base)]
    return PointSet(tuple(pts), (-1, -1, n, n))


def bitrev_boxes(k: int) -> tuple[tuple[int, int, int, int], ...]:
    """All k * 2^(k-1) boxes, closed, as (x0, y0, x1, y1).

    Class i (1-based) pairs m with m + 2^(i-1); the box is 2^(i-1) wide
    and 2^(k-i) tall.
    """
    out = []
    for i in range(1, k + 1):
        dx = 1 << (i - 1)
        dy = 1 << (k - i)
        for m in range(1 << k):
            if m & dx:
                continue
            y = bit_reverse(m, k)
            out.append((m, y, m + dx, y + dy))
    return tuple(out)


def lower_bound(k: int) -> int:
    """ceil(k * 2^k / 8): minimum operations between the two slab states."""
    return (k * (1 << k) + 7) // 8


def saturation(P: PointSet, r: Rectangulation, box) -> Fraction:
    """Direct from-scratch saturation of one box: merge the clipped y
    spans of all vertical segments in the box's closed column range."""
    x0, y0, x1, y1 = box
    w = _Work(P, r)
    ivs = []
    for i in range(w.n):
        if w.orient[i] != "V":
            continue
        x = w.pts[i][0]
        if not (x0 <= x <= x1):
            continue
        lo, hi = max(w.span_lo[i], y0), min(w.span_hi[i], y1)
        if lo < hi:
            ivs.append((lo, hi))
    ivs.sort()
    covered = 0
    cur_lo = cur_hi = None
    for lo, hi in ivs:
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                covered += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    if cur_hi is not None:
        covered += cur_hi - cur_lo
    return Fraction(covered, y1 - y0)


def total_saturation(P: PointSet, r: Rectangulation, boxes) -> Fraction:
    return sum((saturation(P, r, b) for b in boxes), Fraction(0))


class SatAuditor:
    """Incremental exact saturation over a fixed box family.

    Per box, an integer coverage count for every unit y cell (all
    coordinates here are integers); a cell is covered when its count is
    positive.  A vertical piece touches at most one box per class in more
    than a point, so applying a piece costs one clipped pass per class.
    """

    def __init__(self, P: PointSet, boxes):
        self.boxes = tuple(boxes)
        self.counts = [[0] * (y1 - y0) for (_, y0, _, y1) in self.boxes]
        self.covered = [0] * len(self.boxes)
        self.heights = [y1 - y0 for (_, y0, _, y1) in self.boxes]
        self.col_boxes: dict[int, list[int]] = {}
        for b, (x0, _, x1, _) in enumerate(self.boxes):
            for x in range(x0, x1 + 1):
                self.col_boxes.setdefault(x, []).append(b)
        self.total = Fraction(0)

    def load(self, w: _Work) -> None:
        for row in self.counts:
            for t in range(len(row)):
                row[t] = 0
        self.covered = [0] * len(self.boxes)
        self.total = Fraction(0)
        for i in range(w.n):
            if w.orient[i] == "V":
                self._piece(w.pts[i][0], w.span_lo[i], w.span_hi[i], +1)

    def _piece(self, x: int, lo: int, hi: int, sign: int) -> dict[int, int]:
        """Add or remove one vertical piece; returns covered-cell deltas
        per touched box."""
        deltas: dict[int, int] = {}
        for b in self.col_boxes.get(x, ()):
            bx0, by0, bx1, by1 = self.boxes[b]
            clo, chi = max(lo, by0), min(hi, by1)
            if clo >= chi:
                continue
            row = self.counts[b]
            d = 0
            if sign > 0:
                for y in range(clo - by0, chi - by0):
                    if row[y] == 0:
                        d += 1
                    row[y] += 1
            else:
                for y in range(clo - by0, chi - by0):
                    row[y] -= 1
                    if row[y] == 0:
                        d -= 1
            if d:
                deltas[b] = d
                self.covered[b] += d
                self.total += Fraction(d, self.heights[b])
        return deltas

    def apply(self, rec: OpRec) -> tuple[Fraction, list[tuple]]:
        """Account one operation.  Returns (total delta, violations), where
        a violation is an inserted piece increasing some box it does not
        fit inside."""
        delta = -self.total
        viols = []
        for orient, pos, lo, hi in rec.removed:
            if orient == "V" and lo < hi:
                self._piece(pos, lo, hi, -1)
        for orient, pos, lo, hi in rec.inserted:
            if orient != "V" or lo >= hi:
                continue
            for b, d in self._piece(pos, lo, hi, +1).items():
                if d <= 0:
                    continue
                bx0, by0, bx1, by1 = self.boxes[b]
                if not (bx0 <= pos <= bx1 and by0 <= lo and hi <= by1):
                    viols.append(("containment", (orient, pos, lo, hi), self.boxes[b]))
        return self.total + delta, viols

    def per_box(self) -> list[Fraction]:
        return [Fraction(c, h) for c, h in zip(self.covered, self.heights)]


@dataclass
class AuditReport:
    ok: bool
    entries: list  # (op_index, kind, delta, running_total)
    violations: list
    final_total: Fraction
    box_count: int
    op_count: int
    lower_bound_ops: Optional[int] = None


def audit_trace(
    P: PointSet,
    r0: Rectangulation,
    moves,
    boxes,
    flip_bound: int = FLIP_DELTA_BOUND,
    rotate_bound: int = ROTATE_DELTA_BOUND,
    expect_ops_at_least: Optional[int] = None,
) -> AuditReport:
    """Replay moves from r0, tracking every box's saturation exactly.

    Flags any operation whose total-saturation change exceeds its bound in
    absolute value, any inserted piece that raises a box it does not lie
    inside, and (when expect_ops_at_least is given) a trace shorter than
    the claimed lower bound.
    """
    w = _Work(P, r0)
    aud = SatAuditor(P, boxes)
    aud.load(w)
    entries = []
    violations = []
    for idx, m in enumerate(moves):
        rec = w.apply(m)
        delta, viols = aud.apply(rec)
        for v in viols:
            violations.append((idx,) + v)
        bound = flip_bound if m.kind == "flip" else rotate_bound
        if abs(delta) > bound:
            violations.append((idx, "delta_bound", m.kind, delta))
        entries.append((idx, m.kind, delta, aud.total))
    if expect_ops_at_least is not None and len(list(moves)) < expect_ops_at_least:
        violations.append(("trace_too_short", len(list(moves)), expect_ops_at_least))
    return AuditReport(
        ok=not violations,
        entries=entries,
        violations=violations,
        final_total=aud.total,
        box_count=len(tuple(boxes)),
        op_count=len(entries),
        lower_bound_ops=expect_ops_at_least,
    )
