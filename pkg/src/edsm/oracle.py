"""Brute-force references.

Nothing here imports the fast modules: every function is a transcription of
a definition with plain loops over bytes, so agreement with the fast paths
means something.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def hamming(a: bytes, b: bytes) -> int:
    if len(a) != len(b):
        raise ValueError("Hamming distance needs equal lengths")
    return sum(1 for x, y in zip(a, b) if x != y)


def edsm_naive(pattern: bytes, symbols: Sequence[Sequence[bytes]], k: int) -> list[int]:
    """End positions of k-mismatch occurrences of ``pattern`` in an ED-string.

    ``symbols`` lists, per symbol, its strings with b"" standing for the empty
    string.  States are (matched prefix length, mismatches); a fresh state
    (0, 0) may start at any offset of any string, a state survives a symbol
    only by consuming a whole string, and an occurrence ends wherever a state
    reaches full length after consuming at least one byte of the current symbol.
    """
    m = len(pattern)
    carried: set[tuple[int, int]] = set()
    found = []
    for i, strings in enumerate(symbols):
        incoming = carried | {(0, 0)}
        nxt: set[tuple[int, int]] = set()
        hit = False
        for x in strings:
            if x == b"":
                nxt |= incoming
                continue
            starts = [(0, s) for s in incoming] + [(off, (0, 0)) for off in range(1, len(x))]
            for off, (j, e) in starts:
                t = off
                while t < len(x):
                    if x[t] != pattern[j]:
                        e += 1
                        if e > k:
                            break
                    j += 1
                    t += 1
                    if j == m:
                        hit = True
                        break
                else:
                    if j < m:
                        nxt.add((j, e))
        carried = nxt
        if hit:
            found.append(i)
    return found


def occ_naive(p: bytes, t: bytes, kappa: int) -> list[int]:
    return [x for x in range(len(t) - len(p) + 1) if hamming(p, t[x : x + len(p)]) <= kappa]


def ape_bruteforce(text: bytes, patterns: Iterable[bytes], k: int, rows: Sequence[Sequence[bool]]) -> list[list[bool]]:
    """V_{d'}[e] for every e and d', read straight off the definition."""
    m = len(text)
    pats = list(patterns)
    out = [[False] * m for _ in range(k + 1)]
    for e in range(m):
        for dd in range(k + 1):
            for p in pats:
                j = e - len(p)
                if j < 0:
                    continue
                cost = hamming(p, text[j:e])
                if any(rows[d][j] and d + cost <= dd for d in range(dd + 1)):
                    out[dd][e] = True
                    break
    return out


def sumset_naive(xs: Iterable[int], ys: Iterable[int]) -> set[int]:
    ys = list(ys)
    return {x + y for x in xs for y in ys}


def prefix_suffix_naive(pattern: bytes, symbols: Sequence[Sequence[bytes]], k: int, upto: int) -> list[list[bool]]:
    """B_d[j] after symbol ``upto``: is P[..j) within d of a suffix of some spelled string?

    Enumerates the suffixes of every string of the language prefix, so only
    usable on tiny inputs.
    """
    m = len(pattern)
    spelled = {b""}
    for strings in symbols[: upto + 1]:
        spelled = {a + b for a in spelled for b in strings}
    rows = [[False] * m for _ in range(k + 1)]
    for s in spelled:
        for j in range(0, min(m - 1, len(s)) + 1):
            d = hamming(pattern[:j], s[len(s) - j :])
            for dd in range(d, k + 1):
                rows[dd][j] = True
    return rows
