"""Combinatorial model of rectangulations of a point set.

A rectangulation of n points inside an axis-parallel rectangle R is a set
of n noncrossing axis-parallel segments, one through each point, that cuts
R into n+1 rectangular faces.  Points must be noncorectilinear (pairwise
distinct x and distinct y coordinates) and strictly interior to R.

The model stored here is purely combinatorial: each segment records its
orientation ('V' or 'H') and, for each of its two ends, what that end is
attached to: a side of R or the index of a perpendicular segment.  The
geometry is recovered by `realize`, which is a single non-recursive pass
because an end attached to segment j sits at j's own coordinate line
(x_j for a vertical host, y_j for a horizontal one).

Ends are ordered low before high: for a vertical segment low = bottom end,
high = top end; for a horizontal segment low = left, high = right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

# Attachment codes for ends resting on a side of R.  Nonnegative values
# mean "attached to segment j".
LEFT = -1
RIGHT = -2
BOTTOM = -3
TOP = -4

SIDE_NAMES = {LEFT: "left", RIGHT: "right", BOTTOM: "bottom", TOP: "top"}
SIDE_CODES = {v: k for k, v in SIDE_NAMES.items()}


def perp(orient: str) -> str:
    return "H" if orient == "V" else "V"


def boundary_end(orient: str, end: int) -> int:
    """The only legal side code for the given end (0 = low, 1 = high)."""
    if orient == "V":
        return BOTTOM if end == 0 else TOP
    return LEFT if end == 0 else RIGHT


@dataclass(frozen=True)
class PointSet:
    """Points with their bounding rectangle (x0, y0, x1, y1)."""

    points: tuple[tuple[int, int], ...]
    rect: tuple[int, int, int, int]

    @property
    def n(self) -> int:
        return len(self.points)

    def validate(self) -> list[tuple]:
        viol: list[tuple] = []
        x0, y0, x1, y1 = self.rect
        if not (x0 < x1 and y0 < y1):
            viol.append(("degenerate_rect",))
            return viol
        seen_x: dict = {}
        seen_y: dict = {}
        for i, (x, y) in enumerate(self.points):
            if not (x0 < x < x1 and y0 < y < y1):
                viol.append(("point_outside", i))
            if x in seen_x:
                viol.append(("shared_x", seen_x[x], i))
            if y in seen_y:
                viol.append(("shared_y", seen_y[y], i))
            seen_x.setdefault(x, i)
            seen_y.setdefault(y, i)
        return viol

    def require(self) -> "PointSet":
        viol = self.validate()
        if viol:
            raise ValueError(f"invalid point set: {viol}")
        return self


class RSeg(NamedTuple):
    """A realized segment: coordinate line `pos`, span [lo, hi] across it.

    Vertical: x = pos, y in [lo, hi].  Horizontal: y = pos, x in [lo, hi].
    """

    orient: str
    pos: int
    lo: int
    hi: int


@dataclass(frozen=True)
class Rectangulation:
    """Orientation and end attachments for each of the n segments.

    attach[i] = (low_end, high_end), each a side code or a segment index.
    Hashable, so states can be used directly as dict/set keys.
    """

    orient: tuple[str, ...]
    attach: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.orient)


def all_horizontal(n: int) -> Rectangulation:
    """Every segment a full-width horizontal: n+1 stacked slabs."""
    return Rectangulation(("H",) * n, (((LEFT, RIGHT),) * n))


def all_vertical(n: int) -> Rectangulation:
    return Rectangulation(("V",) * n, (((BOTTOM, TOP),) * n))


# all_vertical is the canonical target of every canonicalization routine.
canonical_vertical = all_vertical


def realize(P: PointSet, r: Rectangulation) -> tuple[RSeg, ...]:
    """Geometry of every segment.  Total: garbage attachments fall back to
    the boundary so invalid structures still realize (validate flags them).
    """
    x0, y0, x1, y1 = P.rect
    pts = P.points
    n = len(pts)
    out = []
    for i in range(n):
        x, y = pts[i]
        lo, hi = r.attach[i]
        if r.orient[i] == "V":
            a = pts[lo][1] if 0 <= lo < n else y0
            b = pts[hi][1] if 0 <= hi < n else y1
            out.append(RSeg("V", x, a, b))
        else:
            a = pts[lo][0] if 0 <= lo < n else x0
            b = pts[hi][0] if 0 <= hi < n else x1
            out.append(RSeg("H", y, a, b))
    return tuple(out)


def validate(P: PointSet, r: Rectangulation) -> list[tuple]:
    """All violations of rectangulation validity, empty when valid.

    Checks, in order: point set sanity, per-end structural codes (side code
    matching the end, host index in range and perpendicular), attachment
    geometry (end strictly inside the host's span, host on the correct side
    of the point), pairwise noncrossing, and connectivity to the boundary.
    Connectivity is what pins the face count: every end is attached, so the
    arrangement has 2n+4 vertices and 3n+4 edges, and Euler's formula gives
    n + C inner faces for C components.  C = 1 forces exactly n+1 faces,
    and strict T-attachments leave no reflex corners, so the faces are
    rectangles; no face extraction is needed here.
    """
    viol = list(P.validate())
    n = P.n
    if len(r.orient) != n or len(r.attach) != n:
        viol.append(("length_mismatch",))
        return viol

    structural_ok = [True] * n
    for i in range(n):
        o = r.orient[i]
        if o not in ("V", "H"):
            viol.append(("bad_orient", i))
            structural_ok[i] = False
            continue
        for end in (0, 1):
            a = r.attach[i][end]
            if a < 0:
                if a != boundary_end(o, end):
                    viol.append(("bad_side_code", i, end))
                    structural_ok[i] = False
            else:
                if not (0 <= a < n) or a == i:
                    viol.append(("bad_host_index", i, end))
                    structural_ok[i] = False
                elif r.orient[a] != perp(o):
                    viol.append(("host_not_perpendicular", i, end))
                    structural_ok[i] = False
    if viol:
        return viol

    segs = realize(P, r)
    pts = P.points

    for i in range(n):
        o = r.orient[i]
        px, py = pts[i]
        for end in (0, 1):
            a = r.attach[i][end]
            if a < 0:
                continue
            host = segs[a]
            if o == "V":
                # end point is (px, y_a); must be strictly inside host's span,
                # with the host below the point for the low end, above for high
                if not (host.lo < px < host.hi):
                    viol.append(("end_outside_host", i, end))
                if (host.pos < py) != (end == 0):
                    viol.append(("host_wrong_side", i, end))
            else:
                if not (host.lo < py < host.hi):
                    viol.append(("end_outside_host", i, end))
                if (host.pos < px) != (end == 0):
                    viol.append(("host_wrong_side", i, end))

    for i in range(n):
        if r.orient[i] != "V":
            continue
        vi = segs[i]
        for j in range(n):
            if r.orient[j] != "H":
                continue
            hj = segs[j]
            # strict on both: an attachment contact has y_j on vi's span end
            # (or x_i on hj's end), which fails strictness, so attachments
            # never count as crossings
            if hj.lo < vi.pos < hj.hi and vi.lo < hj.pos < vi.hi:
                viol.append(("crossing", i, j))

    parent = list(range(n + 1))  # node n is the boundary (all four sides)

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for i in range(n):
        for a in r.attach[i]:
            t = n if a < 0 else a
            ru, rv = find(i), find(t)
            if ru != rv:
                parent[ru] = rv
    roots = {find(u) for u in range(n + 1)}
    if len(roots) != 1:
        viol.append(("disconnected", len(roots)))
    return viol


def is_valid(P: PointSet, r: Rectangulation) -> bool:
    return not validate(P, r)


def faces(P: PointSet, r: Rectangulation) -> tuple[tuple[int, int, int, int], ...]:
    """The n+1 rectangular faces as (x_lo, y_lo, x_hi, y_hi), sorted.

    Works by cutting R on every coordinate line into an (n+1) x (n+1) cell
    grid, merging cells not separated by a segment, and reading off each
    component's bounding box.  Quadratic in n, meant for tests and
    rendering, not hot paths.  Raises on states whose faces fail to be
    rectangles (i.e. invalid states).
    """
    x0, y0, x1, y1 = P.rect
    segs = realize(P, r)
    xs = sorted([x0, x1] + [p[0] for p in P.points])
    ys = sorted([y0, y1] + [p[1] for p in P.points])
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    ncol = len(xs) - 1
    nrow = len(ys) - 1
    vat: dict[int, RSeg] = {}
    hat: dict[int, RSeg] = {}
    for s in segs:
        (vat if s.orient == "V" else hat)[s.pos] = s

    parent = list(range(ncol * nrow))

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(u: int, v: int) -> None:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv

    for c in range(1, ncol):
        s = vat.get(xs[c])
        for rw in range(nrow):
            blocked = s is not None and s.lo <= ys[rw] and ys[rw + 1] <= s.hi
            if not blocked:
                union((c - 1) * nrow + rw, c * nrow + rw)
    for rw in range(1, nrow):
        s = hat.get(ys[rw])
        for c in range(ncol):
            blocked = s is not None and s.lo <= xs[c] and xs[c + 1] <= s.hi
            if not blocked:
                union(c * nrow + (rw - 1), c * nrow + rw)

    boxes: dict[int, list[int]] = {}
    counts: dict[int, int] = {}
    for c in range(ncol):
        for rw in range(nrow):
            root = find(c * nrow + rw)
            b = boxes.get(root)
            if b is None:
                boxes[root] = [c, rw, c + 1, rw + 1]
                counts[root] = 1
            else:
                b[0] = min(b[0], c)
                b[1] = min(b[1], rw)
                b[2] = max(b[2], c + 1)
                b[3] = max(b[3], rw + 1)
                counts[root] += 1
    out = []
    for root, (ca, ra, cb, rb) in boxes.items():
        if counts[root] != (cb - ca) * (rb - ra):
            raise ValueError("nonrectangular face; state is not a valid rectangulation")
        out.append((xs[ca], ys[ra], xs[cb], ys[rb]))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# compact keys and JSON


def encode(r: Rectangulation) -> bytes:
    """5 bytes per segment: orientation, then each end as code+4 in two
    little-endian bytes.  Stable across runs; `decode` inverts exactly.
    """
    buf = bytearray()
    for o, (lo, hi) in zip(r.orient, r.attach):
        buf.append(0 if o == "V" else 1)
        buf += (lo + 4).to_bytes(2, "little")
        buf += (hi + 4).to_bytes(2, "little")
    return bytes(buf)


def decode(key: bytes, n: int) -> Rectangulation:
    if len(key) != 5 * n:
        raise ValueError(f"key length {len(key)} != 5*{n}")
    orient = []
    attach = []
    for i in range(n):
        b = key[5 * i : 5 * i + 5]
        orient.append("V" if b[0] == 0 else "H")
        lo = int.from_bytes(b[1:3], "little") - 4
        hi = int.from_bytes(b[3:5], "little") - 4
        attach.append((lo, hi))
    return Rectangulation(tuple(orient), tuple(attach))


def _end_to_json(a: int):
    return SIDE_NAMES[a] if a < 0 else {"seg": a}


def _end_from_json(obj) -> int:
    if isinstance(obj, str):
        return SIDE_CODES[obj]
    return int(obj["seg"])


def to_jsonable(P: PointSet, r: Rectangulation | None = None) -> dict:
    doc: dict = {
        "rect": list(P.rect),
        "points": [[x, y] for x, y in P.points],
    }
    if r is not None:
        doc["rectangulation"] = {
            "orient": list(r.orient),
            "attach": [[_end_to_json(lo), _end_to_json(hi)] for lo, hi in r.attach],
        }
    return doc


def from_jsonable(doc: dict) -> tuple[PointSet, Rectangulation | None]:
    P = PointSet(
        tuple((int(x), int(y)) for x, y in doc["points"]),
        tuple(int(v) for v in doc["rect"]),
    )
    r = None
    if "rectangulation" in doc:
        rr = doc["rectangulation"]
        r = Rectangulation(
            tuple(rr["orient"]),
            tuple((_end_from_json(a), _end_from_json(b)) for a, b in rr["attach"]),
        )
    return P, r


# ---------------------------------------------------------------------------
# point set generators


def diagonal_points(n: int) -> PointSet:
    """p_i = (i+1, i+1) inside [0, n+1]^2."""
    return PointSet(tuple((i + 1, i + 1) for i in range(n)), (0, 0, n + 1, n + 1))


def permutation_points(pi: Iterable[int]) -> PointSet:
    """p_i = (i+1, pi[i]+1): one point per column, heights a permutation."""
    pi = tuple(pi)
    n = len(pi)
    if sorted(pi) != list(range(n)):
        raise ValueError("not a permutation of 0..n-1")
    return PointSet(tuple((i + 1, pi[i] + 1) for i in range(n)), (0, 0, n + 1, n + 1))
