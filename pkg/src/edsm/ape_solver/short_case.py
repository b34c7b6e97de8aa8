"""APE for patterns of moderate length through the errata dictionary."""

from __future__ import annotations

import numpy as np

from ..kerrata import build_errata, decompose, dedup, query_min_le
from ..str_index import Fragment
from .instance import ApeInstance, min_row


def ape_short(inst: ApeInstance, lower: int = 0, upper: int | None = None, stats: dict | None = None) -> np.ndarray:
    """Patterns must have length in (lower, upper]; the bounds are only checked."""
    k, m = inst.k, inst.m
    if upper is None:
        upper = max(map(len, inst.patterns), default=0)
    if any(not lower < len(p) <= upper for p in inst.patterns):
        raise ValueError(f"short solver expects pattern lengths in ({lower}, {upper}]")
    out = inst.empty_output()
    if not inst.patterns:
        return out
    ctx = inst.ctx()
    tree = ctx.tools.tree
    decomps = [decompose(tree, p, k, f) for p, f in zip(inst.patterns, ctx.patterns)]
    kept = dedup(decomps)
    es = build_errata(ctx.idx, [d.pattern for d in kept], k)
    if stats is not None:
        stats["parts"] = [len(d) for d in decomps if d is not None]
        stats["dropped"] = sum(d is None for d in decomps)
        stats["dictionary"] = len(kept)
        stats["level_sizes"] = es.level_sizes
    lengths = sorted(es.tries)
    low = min_row(inst.rows)
    t0 = ctx.text.start
    for j in np.flatnonzero(low <= k).tolist():
        d0 = int(low[j])
        for ln in lengths:
            if j + ln > m - 1:
                break
            frag = Fragment(t0 + j, ln)
            for b in range(k - d0 + 1):
                if query_min_le(es, frag, b):
                    out[d0 + b :, j + ln] = True
                    break
    return out
