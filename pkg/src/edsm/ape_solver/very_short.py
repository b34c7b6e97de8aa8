"""APE for k = 1 and patterns of length at most B'.

Every substring of the text gets the identifier of its locus in the suffix
tree, so a pattern occurs exactly at j iff the identifier of T[j..j+len)
equals the pattern's one.  For one mismatch at offset x, the pattern is split
into P[..x) and P(x..]; the right half is identified in the tree of the
reversed text.  A text window matches with at most one mismatch iff its split
at the same offset yields the same pair of identifiers.  Both joins are hash
lookups here (the construction sorts, which only matters for word-RAM bounds).
"""

from __future__ import annotations

import numpy as np

from .instance import ApeInstance


class ContractError(ValueError):
    pass


def ape_very_short(inst: ApeInstance, b_prime: int) -> np.ndarray:
    if inst.k != 1:
        raise ContractError("the very-short solver handles k = 1 only")
    if any(len(p) > b_prime for p in inst.patterns):
        raise ContractError(f"pattern longer than B'={b_prime}")
    out = inst.empty_output()
    m = inst.m
    if not inst.patterns or m < 2:
        return out
    tools = inst.ctx().tools
    tree, rtree = tools.tree, tools.rtree
    text, rtext = inst.text, inst.text[::-1]
    span = min(b_prime, m - 1)
    root_id = tree.ident(tree.root)
    rroot_id = rtree.ident(rtree.root)

    # fwd[j][x]: id of T[j..j+x); bwd[e][y]: id of reverse(T(e-y..e])
    fwd = [[root_id] + tree.walk(text[j : j + span]) for j in range(m)]
    bwd = [[rroot_id] + rtree.walk(rtext[m - 1 - e : m - 1 - e + span]) for e in range(m)]

    exact: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    lengths = set()
    for p in set(inst.patterns):
        ln = len(p)
        lengths.add(ln)
        left = [root_id] + tree.walk(p)
        right = [rroot_id] + rtree.walk(p[::-1])
        if left[ln] is not None:
            exact.add(left[ln])
        for x in range(ln):
            a, b = left[x], right[ln - 1 - x]
            if a is not None and b is not None:
                pairs.add((a, b))

    u0, u1 = inst.rows[0], inst.rows[1]
    for ln in sorted(lengths):
        for j in range(m - ln):
            e = j + ln
            if not (u0[j] or u1[j]):
                continue
            if fwd[j][ln] in exact:
                # exact occurrence keeps the budget of the input row
                if u0[j]:
                    out[0:, e] = True
                else:
                    out[1, e] = True
                continue
            if u0[j] and not out[1, e]:
                ends = bwd[e - 1]
                row = fwd[j]
                for x in range(ln):
                    if (row[x], ends[ln - 1 - x]) in pairs:
                        out[1, e] = True
                        break
    return out
