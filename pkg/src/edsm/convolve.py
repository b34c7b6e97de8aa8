"""Sumsets of integer sets by boolean convolution."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

# below this many elements in the smaller set, OR-ing shifted bitsets beats an FFT
SHIFT_OR_CUTOFF = 24


@dataclass(frozen=True)
class PosSet:
    """A subset of [0, bound) stored as a boolean membership vector."""

    bound: int
    bits: np.ndarray

    @classmethod
    def from_iter(cls, items: Iterable[int], bound: int) -> "PosSet":
        bits = np.zeros(bound, dtype=bool)
        items = list(items)
        if items:
            arr = np.asarray(items, dtype=np.int64)
            if arr.min() < 0 or arr.max() >= bound:
                raise ValueError("element outside [0, bound)")
            bits[arr] = True
        return cls(bound, bits)

    def __iter__(self):
        return iter(np.flatnonzero(self.bits).tolist())

    def __len__(self) -> int:
        return int(self.bits.sum())

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.bound and bool(self.bits[x])

    def to_set(self) -> set[int]:
        return set(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PosSet):
            return NotImplemented
        return self.bound == other.bound and np.array_equal(self.bits, other.bits)


def _shift_or(small: np.ndarray, big: np.ndarray, out_len: int) -> np.ndarray:
    out = np.zeros(out_len, dtype=bool)
    for s in np.flatnonzero(small):
        out[s : s + len(big)] |= big
    return out


def _fft_or(a: np.ndarray, b: np.ndarray, out_len: int) -> np.ndarray:
    size = 1 << max(1, (len(a) + len(b) - 1).bit_length())
    fa = np.fft.rfft(a.astype(np.float64), size)
    fb = np.fft.rfft(b.astype(np.float64), size)
    counts = np.fft.irfft(fa * fb, size)[:out_len]
    # true counts are integers, so anything above one half is a genuine hit
    return counts > 0.5


def sumset(x: PosSet, y: PosSet) -> PosSet:
    """{a + b : a in x, b in y} over [0, 2*bound)."""
    bound = max(x.bound, y.bound)
    out_len = 2 * bound
    if not x.bits.any() or not y.bits.any():
        return PosSet(out_len, np.zeros(out_len, dtype=bool))
    nx, ny = int(x.bits.sum()), int(y.bits.sum())
    if min(nx, ny) <= SHIFT_OR_CUTOFF:
        small, big = (x.bits, y.bits) if nx <= ny else (y.bits, x.bits)
        bits = _shift_or(small, big, out_len)
    else:
        bits = _fft_or(x.bits, y.bits, out_len)
    return PosSet(out_len, bits)


def sumset_of(xs: Iterable[int], ys: Iterable[int]) -> set[int]:
    """Convenience wrapper on plain integer collections (all elements >= 0)."""
    xs, ys = list(xs), list(ys)
    if not xs or not ys:
        return set()
    bound = max(max(xs), max(ys)) + 1
    return sumset(PosSet.from_iter(xs, bound), PosSet.from_iter(ys, bound)).to_set()


def shift(x: PosSet, s: int) -> tuple[PosSet, bool]:
    """x + s inside the same universe; the flag reports dropped elements."""
    bits = np.zeros(x.bound, dtype=bool)
    src = np.flatnonzero(x.bits) + s
    keep = (src >= 0) & (src < x.bound)
    bits[src[keep]] = True
    return PosSet(x.bound, bits), bool((~keep).any())
