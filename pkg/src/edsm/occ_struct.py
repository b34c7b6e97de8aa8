"""k-mismatch occurrences and their structure: few occurrences or a periodic certificate."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .str_index import (
    Fragment,
    LceIndex,
    Progression,
    hamming_many,
    is_primitive,
    rotate,
    runs,
)

DENSE_FACTOR = 864
PERIOD_FACTOR = 128


class DichotomyError(RuntimeError):
    """Dense occurrences without a short approximate period."""


@dataclass(frozen=True)
class PeriodCert:
    """q primitive with Hamming(P, q^inf[r .. r+|P|)) == len(pat_mismatches).

    ``anchor`` is an offset in P where P[anchor .. anchor+2|q|) is free of
    periodic mismatches, i.e. P holds an exact copy of qq (rotated by the phase).
    """

    q: bytes
    r: int
    pat_mismatches: tuple[int, ...]
    anchor: int = 0

    @property
    def period(self) -> int:
        return len(self.q)

    def block(self, p: Fragment) -> Fragment:
        """The exact period copy inside P; its phase in q^inf is r + anchor."""
        return Fragment(p.start + self.anchor, len(self.q))


@dataclass(frozen=True)
class Explicit:
    positions: tuple[int, ...]

    def materialize(self) -> list[int]:
        return list(self.positions)

    def __contains__(self, x: int) -> bool:
        i = bisect_right(self.positions, x) - 1
        return i >= 0 and self.positions[i] == x

    def __len__(self) -> int:
        return len(self.positions)

    def first(self) -> int:
        return self.positions[0]

    def last(self) -> int:
        return self.positions[-1]


@dataclass(frozen=True)
class Periodic:
    cert: PeriodCert
    progressions: tuple[Progression, ...]

    def materialize(self) -> list[int]:
        return [x for pr in self.progressions for x in pr]

    def __contains__(self, x: int) -> bool:
        starts = [pr.start for pr in self.progressions]
        i = bisect_right(starts, x) - 1
        return i >= 0 and x in self.progressions[i]

    def __len__(self) -> int:
        return sum(pr.count for pr in self.progressions)

    def first(self) -> int:
        return self.progressions[0].start

    def last(self) -> int:
        return self.progressions[-1].last


OccRep = Union[Explicit, Periodic]


def occ_scan(idx: LceIndex, p: Fragment, t: Fragment, kappa: int) -> list[int]:
    """All x with Hamming(p, t[x .. x+|p|)) <= kappa, by kangaroo jumps."""
    if p.length > t.length:
        return []
    xs = np.arange(t.length - p.length + 1, dtype=np.int64)
    dist = hamming_many(idx, np.full(len(xs), p.start), t.start + xs, p.length, kappa)
    return xs[dist <= kappa].tolist()


def majority_period(p: bytes, length: int) -> bytes:
    """Per residue class mod ``length`` the most frequent byte (ties: smallest)."""
    arr = np.frombuffer(p, dtype=np.uint8)
    return bytes(int(np.bincount(arr[res::length], minlength=256).argmax()) for res in range(length))


def periodic_distance(p: bytes, q: bytes, offset: int = 0) -> list[int]:
    arr = np.frombuffer(p, dtype=np.uint8)
    qa = np.frombuffer(q, dtype=np.uint8)
    tiled = qa[(np.arange(len(p)) + offset) % len(q)]
    return np.nonzero(arr != tiled)[0].tolist()


def extract_period(p: bytes, kappa: int) -> Optional[PeriodCert]:
    """Shortest primitive q, |q| <= |p|/(128 kappa), with fewer than 2 kappa periodic mismatches."""
    if kappa < 1:
        raise ValueError("extract_period needs kappa >= 1")
    for length in range(1, len(p) // (PERIOD_FACTOR * kappa) + 1):
        q = majority_period(p, length)
        if not is_primitive(q):
            continue
        mis = periodic_distance(p, q)
        if len(mis) < 2 * kappa:
            return PeriodCert(q, 0, tuple(mis), _anchor(len(p), length, mis))
    return None


def _anchor(n: int, qlen: int, mis: list[int]) -> int:
    j = 0
    while (j + 2) * qlen <= n:
        lo, hi = j * qlen, (j + 2) * qlen
        if not any(lo <= x < hi for x in mis):
            return lo
        j += 1
    raise DichotomyError("no mismatch-free double period inside the pattern")


def dense_limit(kappa: int) -> int:
    return DENSE_FACTOR * kappa if kappa else 2


def analyze(idx: LceIndex, p: Fragment, t: Fragment, kappa: int) -> OccRep:
    occ = occ_scan(idx, p, t, kappa)
    if len(occ) <= dense_limit(kappa):
        return Explicit(tuple(occ))
    pb = idx.extract(p)
    if kappa:
        cert = extract_period(pb, kappa)
        if cert is None:
            raise DichotomyError(f"{len(occ)} occurrences but no period of length <= |P|/{PERIOD_FACTOR * kappa}")
    else:
        gap = min(b - a for a, b in zip(occ, occ[1:]))
        q = pb[:gap]
        if gap * 2 > len(pb) or pb[gap:] != pb[:-gap] or not is_primitive(q):
            raise DichotomyError("exact occurrences are not spaced by a primitive period")
        cert = PeriodCert(q, 0, (), 0)
    qlen = cert.period
    x0 = occ[0]
    if any((x - x0) % qlen for x in occ):
        raise DichotomyError("occurrences are not congruent modulo the period")
    # re-express the certificate against the text phase: occurrences are all == r mod |q|
    cert = PeriodCert(rotate(cert.q, -x0), x0 % qlen, cert.pat_mismatches, cert.anchor)
    return Periodic(cert, tuple(runs(occ, qlen)))


def rep_contains(rep: OccRep, x: int) -> bool:
    return x in rep
