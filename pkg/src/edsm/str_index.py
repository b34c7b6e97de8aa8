"""String primitives shared by every solver.

``LceIndex`` answers longest-common-extension queries in O(1) over a family of
strings (suffix array + LCP + sparse-table range minimum).  ``SuffixTree``
hands out substring identifiers while navigating down character by character.
The remaining helpers (kangaroo jumps, periodic mismatches, internal pattern
matching) are thin loops of LCE queries.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

SEPARATOR_BASE = 256
# below this many pairs the scalar kangaroo loop beats numpy call overhead
SMALL_BATCH = 12


class Fragment(NamedTuple):
    """A substring of the indexed corpus: global start and length."""

    start: int
    length: int

    def sub(self, offset: int, length: int | None = None) -> "Fragment":
        if length is None:
            length = self.length - offset
        if offset < 0 or length < 0 or offset + length > self.length:
            raise IndexError("sub-fragment out of range")
        return Fragment(self.start + offset, length)


@dataclass(frozen=True)
class Progression:
    start: int
    step: int
    count: int

    def __post_init__(self):
        if self.step < 1 or self.count < 1:
            raise ValueError("progression needs step >= 1 and count >= 1")

    @property
    def last(self) -> int:
        return self.start + (self.count - 1) * self.step

    def __contains__(self, x: int) -> bool:
        d = x - self.start
        return 0 <= d <= (self.count - 1) * self.step and d % self.step == 0

    def __iter__(self):
        return iter(range(self.start, self.last + 1, self.step))

    def __len__(self) -> int:
        return self.count


def runs(positions: Sequence[int], step: int | None = None) -> list[Progression]:
    """Split sorted positions into maximal arithmetic runs.

    With ``step`` given, runs are maximal chains with exactly that difference;
    otherwise each run keeps the first difference it sees.
    """
    out: list[Progression] = []
    i, n = 0, len(positions)
    while i < n:
        d = step if step is not None else (positions[i + 1] - positions[i] if i + 1 < n else 1)
        j = i
        while j + 1 < n and positions[j + 1] - positions[j] == d:
            j += 1
        out.append(Progression(positions[i], d if j > i else (step or 1), j - i + 1))
        i = j + 1
    return out


def suffix_array(seq: Sequence[int] | np.ndarray) -> np.ndarray:
    """Prefix doubling with numpy lexsort, O(L log^2 L)."""
    s = np.asarray(seq, dtype=np.int64)
    n = len(s)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(s, return_inverse=True)
    rank = rank.astype(np.int64)
    sa = np.argsort(rank, kind="stable")
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        sa = np.lexsort((second, rank))
        r, s2 = rank[sa], second[sa]
        diff = (r[1:] != r[:-1]) | (s2[1:] != s2[:-1])
        new = np.empty(n, dtype=np.int64)
        new[sa] = np.concatenate(([0], np.cumsum(diff)))
        rank = new
        if rank[sa[-1]] == n - 1 or k >= n:
            return sa
        k *= 2


def lcp_array(seq: Sequence[int], sa: Sequence[int]) -> list[int]:
    """Kasai: lcp[r] = LCP(suffix sa[r-1], suffix sa[r]), lcp[0] = 0."""
    n = len(sa)
    rank = [0] * n
    for r, p in enumerate(sa):
        rank[p] = r
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = sa[r - 1]
        while i + h < n and j + h < n and seq[i + h] == seq[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


class _SparseMin:
    def __init__(self, values: Sequence[int]):
        arr = np.asarray(values, dtype=np.int64)
        levels = [arr]
        w = 1
        while 2 * w <= len(arr):
            prev = levels[-1]
            levels.append(np.minimum(prev[:-w], prev[w:]))
            w *= 2
        # a padded 2-D copy serves batched queries; python lists serve scalar ones,
        # since indexing them is much faster than indexing numpy scalars
        table = np.zeros((len(levels), len(arr)), dtype=np.int32)
        for i, lv in enumerate(levels):
            table[i, : len(lv)] = lv
        self.table = table
        if len(arr) * len(levels) <= 4_000_000:
            self.levels = [lv.tolist() for lv in levels]
        else:
            self.levels = levels

    def query(self, lo: int, hi: int) -> int:
        """min(values[lo..hi]) inclusive, lo <= hi."""
        k = (hi - lo + 1).bit_length() - 1
        lv = self.levels[k]
        a, b = lv[lo], lv[hi - (1 << k) + 1]
        return int(a if a < b else b)


    def query_many(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        k = np.frexp(hi - lo + 1)[1].astype(np.int64) - 1
        a = self.table[k, lo]
        b = self.table[k, hi - (1 << k) + 1]
        return np.minimum(a, b)


class LceIndex:
    """Constant-time LCE over a family of byte strings.

    Members are concatenated with pairwise distinct separators (values >= 256),
    so an extension never crosses a member boundary.
    """

    def __init__(self, members: Sequence[bytes], _reverse_of: "LceIndex | None" = None):
        if not members:
            raise ValueError("LceIndex needs at least one member")
        self.members = [bytes(m) for m in members]
        text: list[int] = []
        starts: list[int] = []
        ends: list[int] = []
        for i, m in enumerate(self.members):
            starts.append(len(text))
            text.extend(m)
            ends.append(len(text))
            text.append(SEPARATOR_BASE + i)
        self.text = text
        self.starts = starts
        self._ends = ends
        sa = suffix_array(text)
        self.sa = sa.tolist()
        self.lcp = lcp_array(text, self.sa)
        rank = [0] * len(text)
        for r, p in enumerate(self.sa):
            rank[p] = r
        self.rank = rank
        self._rank_arr = np.asarray(rank, dtype=np.int64)
        end_at = np.empty(len(text), dtype=np.int64)
        for st, en in zip(starts, ends):
            end_at[st : en + 1] = en
        self._end_at = end_at
        self._rmq = _SparseMin(self.lcp)
        self._reverse = _reverse_of

    def __len__(self) -> int:
        return len(self.text)

    def member(self, i: int) -> Fragment:
        return Fragment(self.starts[i], len(self.members[i]))

    def fragment(self, member: int, offset: int = 0, length: int | None = None) -> Fragment:
        return self.member(member).sub(offset, length)

    def member_of(self, pos: int) -> int:
        return bisect_right(self.starts, pos) - 1

    def end_of(self, pos: int) -> int:
        return self._ends[self.member_of(pos)]

    def extract(self, frag: Fragment) -> bytes:
        m = self.member_of(frag.start)
        off = frag.start - self.starts[m]
        if frag.length < 0 or off + frag.length > len(self.members[m]):
            raise IndexError("fragment crosses a member boundary")
        return self.members[m][off : off + frag.length]

    def lce(self, i: int, j: int) -> int:
        """Length of the longest common prefix of corpus suffixes at i and j."""
        if i == j:
            return self.end_of(i) - i if self.text[i] < SEPARATOR_BASE else 0
        ri, rj = self.rank[i], self.rank[j]
        if ri > rj:
            ri, rj = rj, ri
        return self._rmq.query(ri + 1, rj)

    def lce_many(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """Vectorised ``lce`` over equal-length position arrays."""
        i = np.asarray(i, dtype=np.int64)
        j = np.asarray(j, dtype=np.int64)
        out = np.empty(len(i), dtype=np.int64)
        same = i == j
        if same.any():
            out[same] = self._end_at[i[same]] - i[same]
        diff = ~same
        if diff.any():
            ri, rj = self._rank_arr[i[diff]], self._rank_arr[j[diff]]
            lo, hi = np.minimum(ri, rj) + 1, np.maximum(ri, rj)
            out[diff] = self._rmq.query_many(lo, hi)
        return out

    @property
    def reverse(self) -> "LceIndex":
        """Mirror index over the reversed members (built on first use)."""
        if self._reverse is None:
            self._reverse = LceIndex([m[::-1] for m in self.members], _reverse_of=self)
        return self._reverse

    def lce_rev(self, i: int, j: int) -> int:
        """Length of the longest common suffix of corpus prefixes ending at i and j."""
        rev = self.reverse
        return rev.lce(self._mirror(i), self._mirror(j))

    def _mirror(self, pos: int) -> int:
        m = self.member_of(pos)
        off = pos - self.starts[m]
        return self.reverse.starts[m] + len(self.members[m]) - 1 - off


def build_lce(members: Sequence[bytes]) -> LceIndex:
    return LceIndex(members)


def _lce_cap(idx: LceIndex, i: int, j: int, cap: int) -> int:
    if cap <= 0:
        return 0
    l = idx.lce(i, j)
    return l if l < cap else cap


def pillar_extract(idx: LceIndex, member: int, l: int, r: int) -> bytes:
    size = len(idx.members[member])
    if not 0 <= l <= r < size:
        raise IndexError(f"fragment [{l}, {r}] outside member of length {size}")
    return idx.members[member][l : r + 1]


def pillar_ipm(idx: LceIndex, s: Fragment, t: Fragment) -> list[Progression]:
    """Exact occurrences of s in t, requires |t| <= 2|s|."""
    if s.length == 0 or t.length > 2 * s.length:
        raise ValueError("internal pattern matching needs 0 < |t| <= 2|s|")
    occ = [x for x in range(t.length - s.length + 1) if idx.lce(t.start + x, s.start) >= s.length]
    out = runs(occ)
    assert len(out) <= 2, "occurrences of s in t with |t| <= 2|s| form one progression"
    return out


def kangaroo_mismatches(
    idx: LceIndex, a: Fragment, b: Fragment, budget: int
) -> Optional[list[int]]:
    """Mismatch offsets between equal-length fragments, or None past ``budget``."""
    if a.length != b.length:
        raise ValueError("kangaroo jumps need equal-length fragments")
    out: list[int] = []
    i, n = 0, a.length
    while True:
        i += _lce_cap(idx, a.start + i, b.start + i, n - i)
        if i >= n:
            return out
        if len(out) == budget:
            return None
        out.append(i)
        i += 1


def hamming_at_most(idx: LceIndex, a_start: int, b_start: int, length: int, budget: int) -> int:
    """Hamming distance of two equal-length corpus windows, or budget+1 if larger."""
    i = cnt = 0
    while True:
        l = idx.lce(a_start + i, b_start + i)
        i += l
        if i >= length:
            return cnt
        cnt += 1
        if cnt > budget:
            return cnt
        i += 1


def hamming_many(idx: LceIndex, a_starts, b_starts, length, budget: int) -> np.ndarray:
    """Batched ``hamming_at_most``: kangaroo jumps for all pairs at once, budget+1 rounds."""
    a = np.asarray(a_starts, dtype=np.int64)
    b = np.asarray(b_starts, dtype=np.int64)
    ln = np.broadcast_to(np.asarray(length, dtype=np.int64), a.shape)
    if len(a) <= SMALL_BATCH:
        return np.array(
            [hamming_at_most(idx, int(x), int(y), int(n), budget) for x, y, n in zip(a, b, ln)], dtype=np.int64
        )
    cnt = np.zeros(len(a), dtype=np.int64)
    pos = np.zeros(len(a), dtype=np.int64)
    live = np.arange(len(a))
    for _ in range(budget + 1):
        if live.size == 0:
            break
        pos[live] += idx.lce_many(a[live] + pos[live], b[live] + pos[live])
        live = live[pos[live] < ln[live]]
        cnt[live] += 1
        pos[live] += 1
        live = live[pos[live] < ln[live]]
    # pairs still open after the loop have already counted budget+1 mismatches
    return cnt


def periodic_mismatches(
    idx: LceIndex, frag: Fragment, q: Fragment, offset: int, budget: int
) -> Optional[list[int]]:
    """Mis(frag, q^inf[offset .. offset+|frag|)), or None once it exceeds ``budget``.

    After a full period matches, the next mismatch is found by extending frag
    against itself shifted by |q|, so every mismatch costs O(1) LCE queries.
    """
    p = q.length
    if p == 0:
        raise ValueError("period must be nonempty")
    n, f = frag.length, frag.start
    out: list[int] = []
    i = 0
    while i < n:
        ph = (offset + i) % p
        span = min(p, n - i)
        first = min(span, p - ph)
        l = _lce_cap(idx, f + i, q.start + ph, first)
        if l == first and l < span:
            l += _lce_cap(idx, f + i + l, q.start, span - l)
        if l < span:
            out.append(i + l)
            if len(out) > budget:
                return None
            i += l + 1
            continue
        i += span
        if i < n:
            i += _lce_cap(idx, f + i, f + i - p, n - i)
            if i < n:
                out.append(i)
                if len(out) > budget:
                    return None
                i += 1
    return out


def is_primitive(s: bytes) -> bool:
    """True iff s is not a proper power; uses the smallest period (KMP border)."""
    n = len(s)
    if n == 0:
        raise ValueError("primitivity is defined for nonempty strings")
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    per = n - fail[-1]
    return per == n or n % per != 0


def smallest_period(s: bytes) -> int:
    n = len(s)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    return n - fail[-1] if n else 0


def are_cyclic_equivalent(a: bytes, b: bytes) -> bool:
    if not a or not b:
        raise ValueError("cyclic equivalence is defined for nonempty strings")
    return len(a) == len(b) and a in b + b


def rotate(s: bytes, shift: int) -> bytes:
    """The cyclic shift starting at s[shift mod |s|]."""
    if not s:
        return s
    shift %= len(s)
    return s[shift:] + s[:shift]


# ---------------------------------------------------------------- suffix tree


class SuffixTree:
    """Compact trie of the suffixes of text+$, built from suffix array and LCP.

    A navigation cursor is a pair (node, depth): the locus lies on the edge
    entering ``node`` (or at ``node`` itself when depth equals its depth).
    Identifiers encode the pair injectively, so two occurring strings share
    an identifier iff they are equal.
    """

    TERMINATOR = SEPARATOR_BASE

    def __init__(self, text: bytes):
        self.text_bytes = bytes(text)
        seq = list(self.text_bytes) + [self.TERMINATOR]
        self.seq = seq
        n = len(seq)
        sa = suffix_array(seq).tolist()
        lcp = lcp_array(seq, sa)
        depth = [0]
        pos = [sa[0]]
        parent = [-1]
        children: list[dict[int, int]] = [{}]

        def new_node(d: int, p: int) -> int:
            depth.append(d)
            pos.append(p)
            parent.append(-1)
            children.append({})
            return len(depth) - 1

        stack = [0]
        for r, s in enumerate(sa):
            l = lcp[r] if r else 0
            last = -1
            while depth[stack[-1]] > l:
                last = stack.pop()
            if depth[stack[-1]] < l:
                u = new_node(l, pos[last])
                par = stack[-1]
                children[par][seq[pos[last] + depth[par]]] = u
                parent[u] = par
                children[u][seq[pos[last] + l]] = last
                parent[last] = u
                stack.append(u)
            leaf = new_node(n - s, s)
            par = stack[-1]
            children[par][seq[s + depth[par]]] = leaf
            parent[leaf] = par
            stack.append(leaf)
        self.depth, self.pos, self.parent, self.children = depth, pos, parent, children
        pre = [0] * len(depth)
        order = 0
        todo = [0]
        while todo:
            v = todo.pop()
            pre[v] = order
            order += 1
            todo.extend(children[v][c] for c in sorted(children[v], reverse=True))
        self.preorder = pre
        self._width = n + 1

    @property
    def root(self) -> tuple[int, int]:
        return (0, 0)

    def step(self, cur: Optional[tuple[int, int]], ch: int) -> Optional[tuple[int, int]]:
        if cur is None:
            return None
        node, d = cur
        if d == self.depth[node]:
            child = self.children[node].get(ch)
            return None if child is None else (child, d + 1)
        return (node, d + 1) if self.seq[self.pos[node] + d] == ch else None

    def ident(self, cur: Optional[tuple[int, int]]) -> Optional[int]:
        if cur is None:
            return None
        node, d = cur
        return self.preorder[node] * self._width + d + 1

    def locate(self, cur: tuple[int, int]) -> int:
        """A text position where the string at ``cur`` occurs."""
        return self.pos[cur[0]]

    def walk(self, s: Iterable[int], cur: Optional[tuple[int, int]] = None) -> list[Optional[int]]:
        """Identifier of every nonempty prefix of s; None once a prefix is absent."""
        cur = self.root if cur is None else cur
        out: list[Optional[int]] = []
        for ch in s:
            cur = self.step(cur, ch)
            out.append(self.ident(cur))
        return out

    def longest_prefix(self, s: bytes, start: int = 0) -> tuple[int, Optional[tuple[int, int]]]:
        """Length of the longest prefix of s[start:] occurring in the text, and its cursor."""
        cur = self.root
        n = 0
        for ch in s[start:]:
            nxt = self.step(cur, ch)
            if nxt is None:
                break
            cur = nxt
            n += 1
        return n, cur


def substring_id_walk(tree: SuffixTree, s: bytes) -> list[Optional[int]]:
    return tree.walk(s)
