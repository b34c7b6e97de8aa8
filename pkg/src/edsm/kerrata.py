"""Dictionary lookup with few mismatches, used by the short-pattern APE solver.

The dictionary words are cut into fragments of the query text (``decompose``)
so that duplicates collapse to one integer tuple (``dedup``).  The lookup
structure is the recursive errata trie: a compact trie per word length with a
heavy-path decomposition, where every heavy path owns a "group" trie holding
the strings that hang off it with their first divergent character patched to
the heavy one.  A query spends one unit of budget per patch.

Strings inside the structure are never copied.  A stored string is a window
of the shared ``LceIndex`` plus a short dict of patched positions, and
comparisons jump over equal stretches with LCE queries.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence, Union

from .str_index import Fragment, LceIndex, SuffixTree

MAX_K = 8


# ------------------------------------------------------------- decomposition


@dataclass(frozen=True)
class Decomposition:
    """Parts are either (start, length) fragments of the text or single literal bytes."""

    pattern: Fragment
    parts: tuple[Union[Fragment, int], ...]

    def key(self) -> tuple[tuple[int, int], ...]:
        # literals encode as 0, fragments as (start+1, length) so 0 stays free
        return tuple((0, p) if isinstance(p, int) else (p.start + 1, p.length) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def decompose(tree: SuffixTree, p: bytes, k: int, pattern: Fragment | None = None) -> Optional[Decomposition]:
    """Greedy longest-substring cutting of p against the text of ``tree``.

    Each round takes the longest prefix of the remainder that occurs in the
    text; a byte that does not occur at all becomes a literal part.  More than
    2k+1 rounds means every text window is more than k mismatches away.
    """
    if pattern is None:
        pattern = Fragment(0, len(p))
    parts: list[Union[Fragment, int]] = []
    i = 0
    while i < len(p):
        if len(parts) == 2 * k + 1:
            return None
        length, cur = tree.longest_prefix(p, i)
        if length == 0:
            parts.append(p[i])
            i += 1
        else:
            parts.append(Fragment(tree.locate(cur), length))
            i += length
    return Decomposition(pattern, tuple(parts))


def dedup(decomps: Iterable[Optional[Decomposition]]) -> list[Decomposition]:
    seen: dict[tuple, Decomposition] = {}
    for d in decomps:
        if d is not None:
            seen.setdefault(d.key(), d)
    return list(seen.values())


# ------------------------------------------------------------ decorated strings


class _Rec:
    """A stored string: idx window at ``start`` with patched positions ``subs``.

    ``tags`` holds, per level, the depth at which this string was patched.
    """

    __slots__ = ("start", "subs", "keys", "tags")

    def __init__(self, start: int, subs: dict[int, int], tags: tuple[int, ...]):
        self.start = start
        self.subs = subs
        self.keys = sorted(subs)
        self.tags = tags

    def patched(self, pos: int, ch: int, tag: Optional[int] = None) -> "_Rec":
        subs = dict(self.subs)
        subs[pos] = ch
        return _Rec(self.start, subs, self.tags if tag is None else self.tags + (tag,))


class _Cmp:
    def __init__(self, idx: LceIndex):
        self.idx = idx
        self.text = idx.text

    def char(self, r: _Rec, i: int) -> int:
        c = r.subs.get(i)
        return self.text[r.start + i] if c is None else c

    def mismatch(self, a: _Rec, b: _Rec, i: int, cap: int) -> int:
        """First offset >= i where a and b differ, or cap."""
        lce = self.idx.lce
        while i < cap:
            ka = bisect_left(a.keys, i)
            kb = bisect_left(b.keys, i)
            nxt = cap
            if ka < len(a.keys) and a.keys[ka] < nxt:
                nxt = a.keys[ka]
            if kb < len(b.keys) and b.keys[kb] < nxt:
                nxt = b.keys[kb]
            if i < nxt:
                l = lce(a.start + i, b.start + i)
                if i + l < nxt:
                    return i + l
                i = nxt
                continue
            if self.char(a, i) != self.char(b, i):
                return i
            i += 1
        return cap


# ----------------------------------------------------------------- the tries


@dataclass
class _Node:
    depth: int
    rec: _Rec  # any string in the subtree, spells the edge into this node
    children: dict[int, "_Node"] = field(default_factory=dict)
    leaves: list[_Rec] = field(default_factory=list)
    size: int = 0
    path: Optional["_Path"] = None


@dataclass
class _Path:
    top: _Node
    rep: _Rec
    nodes: dict[int, _Node]  # depth -> explicit node on the path
    heavy: dict[int, int]  # depth -> heavy character leaving that node
    group: Optional["_Trie"] = None


class _Trie:
    """Compact trie over same-length strings, with heavy paths and group tries below."""

    def __init__(self, cmp: _Cmp, recs: list[_Rec], length: int, level: int, k: int, stats: list[int]):
        self.length = length
        self.level = level
        while len(stats) <= level:
            stats.append(0)
        stats[level] += len(recs)

        def order(a: _Rec, b: _Rec) -> int:
            i = cmp.mismatch(a, b, 0, length)
            if i == length:
                return 0
            return -1 if cmp.char(a, i) < cmp.char(b, i) else 1

        recs = sorted(recs, key=cmp_to_key(order))
        self.root = self._build(cmp, recs, length)
        self.paths: list[_Path] = []
        self._decompose(cmp, self.root)
        if level < k:
            for path in self.paths:
                hang = self._hanging(cmp, path)
                if hang:
                    path.group = _Trie(cmp, hang, length, level + 1, k, stats)

    @staticmethod
    def _build(cmp: _Cmp, recs: list[_Rec], length: int) -> _Node:
        root = _Node(0, recs[0])
        stack = [root]
        prev: Optional[_Rec] = None
        for r in recs:
            l = length if prev is None else cmp.mismatch(prev, r, 0, length)
            if prev is not None and l == length:
                stack[-1].leaves.append(r)
                prev = r
                continue
            if prev is None:
                l = 0
            last = None
            while stack[-1].depth > l:
                last = stack.pop()
            if stack[-1].depth < l:
                # split the edge into ``last`` at depth l
                mid = _Node(l, last.rec)
                stack[-1].children[cmp.char(last.rec, stack[-1].depth)] = mid
                mid.children[cmp.char(last.rec, l)] = last
                stack.append(mid)
            leaf = _Node(length, r, leaves=[r])
            stack[-1].children[cmp.char(r, stack[-1].depth)] = leaf
            stack.append(leaf)
            prev = r
        # sizes bottom-up
        order = [root]
        for v in order:
            order.extend(v.children.values())
        for v in reversed(order):
            v.size = len(v.leaves) + sum(c.size for c in v.children.values())
        return root

    def _decompose(self, cmp: _Cmp, top: _Node) -> None:
        todo = [top]
        while todo:
            u = todo.pop()
            nodes, heavy = {}, {}
            v = u
            while True:
                nodes[v.depth] = v
                if not v.children:
                    break
                hc, hv = max(v.children.items(), key=lambda kv: kv[1].size)
                heavy[v.depth] = hc
                todo.extend(c for ch, c in v.children.items() if ch != hc)
                v = hv
            path = _Path(u, v.rec, nodes, heavy)
            for node in nodes.values():
                node.path = path
            self.paths.append(path)

    @staticmethod
    def _hanging(cmp: _Cmp, path: _Path) -> list[_Rec]:
        out = []
        for d, v in path.nodes.items():
            h = path.heavy.get(d)
            for ch, c in v.children.items():
                if ch == h:
                    continue
                stack = [c]
                while stack:
                    w = stack.pop()
                    for r in w.leaves:
                        out.append(r.patched(d, h, tag=d))
                    stack.extend(w.children.values())
        return out


# ---------------------------------------------------------------- public API


Filter = tuple[int, int, int]  # (tag index, lo, hi): keep records with lo <= tags[i] < hi


@dataclass
class ErrataStructure:
    idx: LceIndex
    k: int
    tries: dict[int, _Trie]
    level_sizes: dict[int, list[int]]
    dictionary_size: int

    def growth_factors(self) -> list[float]:
        """Per length bucket and level, stored strings relative to the level above."""
        out = []
        for sizes in self.level_sizes.values():
            for a, b in zip(sizes, sizes[1:]):
                out.append(b / a)
        return out


def build_errata(idx: LceIndex, patterns: Sequence[Fragment], k: int) -> ErrataStructure:
    if not 0 <= k <= MAX_K:
        raise ValueError(f"k must lie in [0, {MAX_K}]")
    cmp = _Cmp(idx)
    by_len: dict[int, list[_Rec]] = {}
    for f in patterns:
        if f.length > 0:
            by_len.setdefault(f.length, []).append(_Rec(f.start, {}, ()))
    tries, sizes = {}, {}
    for length, recs in by_len.items():
        stats: list[int] = []
        tries[length] = _Trie(cmp, recs, length, 0, k, stats)
        sizes[length] = stats
    return ErrataStructure(idx, k, tries, sizes, sum(len(r) for r in by_len.values()))


def query_min_le(es: ErrataStructure, frag: Fragment, budget: int) -> bool:
    """Does some dictionary word of length |frag| lie within ``budget`` mismatches of frag?"""
    trie = es.tries.get(frag.length)
    if trie is None or budget < 0:
        return False
    budget = min(budget, es.k)
    cmp = _Cmp(es.idx)
    q = _Rec(frag.start, {}, ())
    return _search(cmp, trie, q, budget, ())


def _passes(r: _Rec, filters: tuple[Filter, ...]) -> bool:
    return all(lo <= r.tags[i] < hi for i, lo, hi in filters)


def _search(cmp: _Cmp, trie: _Trie, q: _Rec, b: int, filters: tuple[Filter, ...]) -> bool:
    return _walk(cmp, trie, trie.root.path, 0, q, b, filters)


def _walk(cmp: _Cmp, trie: _Trie, path: _Path, s: int, q: _Rec, b: int, filters: tuple[Filter, ...]) -> bool:
    length = trie.length
    d = cmp.mismatch(q, path.rep, s, length)
    if d == length:
        leaf = path.nodes[length]
        return any(_passes(r, filters) for r in leaf.leaves)
    v = path.nodes.get(d)
    qc = cmp.char(q, d)
    if v is not None:
        child = v.children.get(qc)
        if child is not None and _walk(cmp, trie, child.path, d + 1, q, b, filters):
            return True
    if b == 0:
        return False
    h = cmp.char(path.rep, d)
    patched = q.patched(d, h)
    if _walk(cmp, trie, path, d + 1, patched, b - 1, filters):
        return True
    group = path.group
    if group is None:
        return False
    tag_ix = trie.level
    # strings that left the path above d already mismatch q where they left
    if d > s and _search(cmp, group, q, b - 1, filters + ((tag_ix, s, d),)):
        return True
    if v is not None and _search(cmp, group, patched, b - 1, filters + ((tag_ix, d, d + 1),)):
        return True
    return False


def growth_bound(d: int) -> float:
    return 1 + math.log2(d) if d > 1 else 1.0
