"""Seeded random walks over the flip/rotate graph.

Used to generate "typical" states for benchmarks and property tests.
Moves are drawn by rejection sampling: pick an operation kind and a
segment (and an end, for rotates), test legality in O(attachments), retry
on rejection.  This avoids materializing the full legal-move list, which
would dominate the cost of the walk itself.
"""

from __future__ import annotations

import random
from typing import Optional

from .core import PointSet, Rectangulation, all_horizontal
from .ops import Move, _Work


def random_walk(
    P: PointSet,
    r: Rectangulation,
    steps: int,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
    with_weights: bool = False,
    on_op=None,
) -> tuple[Rectangulation, dict]:
    """Apply `steps` uniformly sampled legal operations starting from r.

    Returns the final state and stats: counts per kind, rejected draws,
    and (when with_weights) the maximum operation weight seen.  `on_op`
    gets each (workspace, OpRec) right after it is applied.
    """
    if rng is None:
        rng = random.Random(seed)
    w = _Work(P, r)
    n = w.n
    stats = {"flips": 0, "rotates": 0, "rejected": 0, "max_weight": 0}
    for _ in range(steps):
        for _attempt in range(200 * n + 200):
            if rng.random() < 0.5:
                i = rng.randrange(n)
                if w.can_flip(i):
                    rec = w.flip(i)
                    stats["flips"] += 1
                    break
            else:
                j = rng.randrange(n)
                end = rng.randrange(2)
                if w.can_rotate(j, end):
                    rec = w.rotate(j, end)
                    stats["rotates"] += 1
                    break
            stats["rejected"] += 1
        else:
            raise RuntimeError("no legal move found; state is stuck")
        if with_weights:
            stats["max_weight"] = max(stats["max_weight"], w.op_weight(rec))
        if on_op is not None:
            on_op(w, rec)
    return w.state(), stats


def random_state(P: PointSet, seed: int, steps: Optional[int] = None) -> Rectangulation:
    """A pseudorandom valid rectangulation: walk from the all-horizontal
    state for 5n steps (enough mixing for test purposes)."""
    if steps is None:
        steps = 5 * P.n
    r, _ = random_walk(P, all_horizontal(P.n), steps, seed=seed)
    return r
