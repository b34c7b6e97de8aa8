"""APE instances: text, patterns, budget and the input rows U_0..U_k."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from ..str_index import Fragment, LceIndex, SuffixTree


class TextTools:
    """Suffix trees of the APE text and of its reverse, built on first use.

    The text is the EDSM pattern, which stays fixed for a whole run, so the
    engine shares one instance across all symbols.
    """

    def __init__(self, text: bytes):
        self.text = bytes(text)

    @cached_property
    def tree(self) -> SuffixTree:
        return SuffixTree(self.text)

    @cached_property
    def rtree(self) -> SuffixTree:
        return SuffixTree(self.text[::-1])


@dataclass
class ApeContext:
    """Where the text and the patterns live inside a shared LCE index."""

    idx: LceIndex
    text: Fragment
    patterns: list[Fragment]
    tools: TextTools


def make_context(text: bytes, patterns: Sequence[bytes]) -> ApeContext:
    idx = LceIndex([text, *patterns])
    return ApeContext(idx, idx.member(0), [idx.member(i + 1) for i in range(len(patterns))], TextTools(text))


@dataclass
class ApeInstance:
    text: bytes
    patterns: list[bytes]
    k: int
    rows: np.ndarray  # bool, shape (k+1, m)
    context: Optional[ApeContext] = field(default=None, repr=False)

    def __post_init__(self):
        self.text = bytes(self.text)
        self.patterns = [bytes(p) for p in self.patterns]
        self.rows = np.asarray(self.rows, dtype=bool)
        if self.k < 0:
            raise ValueError("budget must be nonnegative")
        if self.rows.shape != (self.k + 1, len(self.text)):
            raise ValueError(f"rows must have shape {(self.k + 1, len(self.text))}, got {self.rows.shape}")
        if any(not p for p in self.patterns):
            raise ValueError("patterns must be nonempty")

    @property
    def m(self) -> int:
        return len(self.text)

    def ctx(self) -> ApeContext:
        if self.context is None:
            self.context = make_context(self.text, self.patterns)
        return self.context

    def empty_output(self) -> np.ndarray:
        return np.zeros_like(self.rows)

    def select(self, keep: Sequence[int]) -> "ApeInstance":
        """Sub-instance over a subset of the patterns, sharing the index."""
        ctx = self.ctx()
        sub = ApeContext(ctx.idx, ctx.text, [ctx.patterns[i] for i in keep], ctx.tools)
        return ApeInstance(self.text, [self.patterns[i] for i in keep], self.k, self.rows, sub)


def from_bits(text: bytes | str, patterns: Sequence[bytes | str], k: int, bits: dict[int, Sequence[int]]) -> ApeInstance:
    """Small helper for hand-written instances: ``bits`` maps a row to its set positions."""
    text = text.encode() if isinstance(text, str) else text
    pats = [p.encode() if isinstance(p, str) else p for p in patterns]
    rows = np.zeros((k + 1, len(text)), dtype=bool)
    for d, pos in bits.items():
        rows[d, list(pos)] = True
    return ApeInstance(text, pats, k, rows)


def close_rows(out: np.ndarray) -> np.ndarray:
    """Monotone closure: a bit in V_d is also a bit in every V_d' with d' > d."""
    return np.logical_or.accumulate(out, axis=0)


def min_row(rows: np.ndarray) -> np.ndarray:
    """Per position the smallest d with U_d set, or k+1 if none."""
    k1 = rows.shape[0]
    return np.where(rows.any(axis=0), rows.argmax(axis=0), k1)
