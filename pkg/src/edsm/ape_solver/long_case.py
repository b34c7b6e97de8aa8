"""APE for long patterns through the structure of approximate occurrences.

Row pairs (d, d') reduce APE to computing

    Ext(P, T, A) = (Occ_kappa(P, T) & A) + |P|,   kappa = d' - d,

for every pattern, with A the set bits of U_d.  Patterns are bucketed by
length ``[l, 1.1 l)`` and the text is cut into overlapping windows of about
``1.5 l`` so that each pattern either has few occurrences in a window
(enumerated directly) or is close to periodic with a short period Q.

For the periodic patterns of one window, all share Q and the window text
itself is close to Q-periodic after trimming.  Let T_bar be that periodic
approximation; its mismatches against T split the window into regions.  For
a start x congruent to the pattern's phase r, the number of text mismatches
under the pattern is just (region of x+|P|) - (region of x), and the pattern
mismatches add on top unless a pattern mismatch and a text mismatch line up.
Those alignments form the small exception set E.  So outside E the distance
only depends on the pair of regions, and whole congruence classes can be
pushed through a sumset with the pattern lengths at once.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ..convolve import PosSet, sumset
from ..occ_struct import Explicit, OccRep, Periodic, analyze
from ..str_index import (
    Fragment,
    are_cyclic_equivalent,
    periodic_mismatches,
    pillar_ipm,
    rotate,
)
from .instance import ApeContext, ApeInstance

GROWTH = 1.1


class InvariantError(RuntimeError):
    """A structural statement the algorithm relies on failed on this input."""


@dataclass(frozen=True)
class RestrictedInstance:
    ctx: ApeContext
    offset: int  # window start inside the APE text
    length: int
    ell: float
    patterns: tuple[int, ...]  # indices into ctx.patterns
    kappa: int = 0
    allowed: tuple[int, ...] = ()  # window-local starts taken from U_d

    @property
    def window(self) -> Fragment:
        return Fragment(self.ctx.text.start + self.offset, self.length)


@dataclass(frozen=True)
class RegionPartition:
    taus: tuple[int, ...]
    size: int  # |T| of the (trimmed) window

    @property
    def count(self) -> int:
        return len(self.taus) + 1

    def region(self, x: int) -> int:
        """i such that tau_{i-1} < x <= tau_i."""
        return bisect_left(self.taus, x)

    def bounds(self, i: int) -> tuple[int, int]:
        """Inclusive integer range of region i."""
        lo = self.taus[i - 1] + 1 if i > 0 else 0
        hi = self.taus[i] if i < len(self.taus) else self.size
        return lo, hi


def region_partition(taus, size: int) -> RegionPartition:
    return RegionPartition(tuple(sorted(taus)), size)


def exception_set(pat_mismatches, taus) -> set[int]:
    return {t - p for p in pat_mismatches for t in taus}


def length_buckets(m: int) -> list[float]:
    out, ell = [], 1.0
    while ell <= m:
        out.append(ell)
        ell *= GROWTH
    return out


def window_geometry(ell: float) -> tuple[int, int]:
    """Step and width.  Lengths in the bucket are at most ceil(1.1 l) - 1, so
    a width of step + ceil(1.1 l) - 2 still covers every occurrence, and it
    keeps the window within 1.5 l (the dichotomy needs |T| <= 1.5 |P|)."""
    step = max(1, math.floor(0.4 * ell))
    return step, step + math.ceil(GROWTH * ell) - 2


def make_restricted(inst: ApeInstance, floor: int = 1) -> list[RestrictedInstance]:
    ctx = inst.ctx()
    m = inst.m
    if any(len(p) < floor for p in inst.patterns):
        raise ValueError(f"long solver expects pattern lengths >= {floor}")
    out = []
    buckets = length_buckets(m)
    for ell in buckets:
        members = tuple(i for i, p in enumerate(inst.patterns) if ell <= len(p) < GROWTH * ell)
        if not members:
            continue
        step, width = window_geometry(ell)
        start = 0
        while start < m:
            length = min(width, m - start)
            if length >= ell:
                out.append(RestrictedInstance(ctx, start, length, ell, members))
            if start + width >= m:
                break
            start += step
    return out


def z_threshold(d_hat: int, ell: float) -> int:
    return max(1, math.ceil(math.sqrt(d_hat / max(1.0, math.log2(ell)))))


@dataclass
class _PeriodicPattern:
    index: int
    frag: Fragment
    rep: Periodic
    r: int = 0
    mis: tuple[int, ...] = ()
    exceptions: set[int] = field(default_factory=set)


def solve_restricted(
    ri: RestrictedInstance,
    z: Optional[int] = None,
    cache: Optional[dict] = None,
    trace: Optional[list] = None,
) -> set[int]:
    """Window-local ends x+|P| for every pattern P and allowed start x of a kappa-occurrence."""
    idx = ri.ctx.idx
    kappa = ri.kappa
    win = ri.window
    allowed = ri.allowed
    allowed_set = set(allowed)
    result: set[int] = set()
    periodic: list[_PeriodicPattern] = []
    for i in ri.patterns:
        pf = ri.ctx.patterns[i]
        if pf.length > win.length:
            continue
        key = (ri.offset, ri.length, i, kappa)
        rep: Optional[OccRep] = cache.get(key) if cache is not None else None
        if rep is None:
            rep = analyze(idx, pf, win, kappa)
            if cache is not None:
                cache[key] = rep
        if isinstance(rep, Explicit):
            result.update(x + pf.length for x in rep.positions if x in allowed_set)
        elif len(rep):
            periodic.append(_PeriodicPattern(i, pf, rep))
    if not periodic or not allowed:
        return result

    # trim to the span covered by periodic occurrences
    lo = min(pp.rep.first() for pp in periodic)
    hi = max(pp.rep.last() + pp.frag.length for pp in periodic)
    tw = Fragment(win.start + lo, hi - lo)
    local_allowed = [a - lo for a in allowed if lo <= a < hi]
    local_set = set(local_allowed)

    # one period for everybody, phased against the trimmed text
    first = periodic[0]
    qlen = first.rep.cert.period
    for pp in periodic[1:]:
        if not are_cyclic_equivalent(pp.rep.cert.q, first.rep.cert.q):
            raise InvariantError("periodic patterns of one window have different periods")
    block = first.rep.cert.block(first.frag)
    taus = None
    for c in range(qlen):
        taus = periodic_mismatches(idx, tw, block, c, 6 * kappa)
        if taus is not None:
            break
    if taus is None:
        raise InvariantError("trimmed window is not close to periodic")
    shift = c
    part = region_partition(taus, tw.length)
    if part.count - 1 > 6 * kappa:
        raise InvariantError("too many text mismatches")

    for pp in periodic:
        cert = pp.rep.cert
        twice = Fragment(pp.frag.start + cert.anchor, 2 * qlen)
        prog = pillar_ipm(idx, block, twice)
        o = prog[0].start
        pp.r = (-o - shift - cert.anchor) % qlen
        if (cert.r - lo) % qlen != pp.r:
            raise InvariantError("occurrences not in the phase class of the shared period")
        pp.mis = cert.pat_mismatches
        pp.exceptions = exception_set(pp.mis, part.taus)

    if z is None:
        z = z_threshold(len(periodic), ri.ell)
    nreg = part.count
    ranges = [part.bounds(i) for i in range(nreg)]
    allowed_sorted = sorted(local_allowed)
    out_local: set[int] = set()

    def allowed_in(s: int, r: int) -> list[int]:
        a, b = ranges[s]
        lo_i, hi_i = bisect_left(allowed_sorted, a), bisect_right(allowed_sorted, b)
        return [x for x in allowed_sorted[lo_i:hi_i] if x % qlen == r]

    groups: dict[tuple[int, int, int], set[int]] = {}
    for pp in periodic:
        delta = len(pp.mis)
        plen = pp.frag.length
        for s in range(nreg):
            for t in range(s, nreg):
                if delta + t - s <= kappa:
                    if qlen > z:
                        a, b = ranges[t]
                        hits = {x + plen for x in allowed_in(s, pp.r) if a <= x + plen <= b}
                        out_local |= hits
                        if trace is not None:
                            trace.append(_trace_entry(pp, s, t, hits, "direct"))
                    else:
                        groups.setdefault((pp.r, s, t), set()).add(plen)
                else:
                    a, b = ranges[t]
                    s_lo, s_hi = ranges[s]
                    for e in pp.exceptions:
                        if s_lo <= e <= s_hi and a <= e + plen <= b and e in local_set and e + lo in pp.rep:
                            out_local.add(e + plen)

    if groups:
        bound = tw.length + 1
        for (r, s, t), lens in groups.items():
            starts = allowed_in(s, r)
            if not starts:
                continue
            a, b = ranges[t]
            ends = sumset(PosSet.from_iter(starts, bound), PosSet.from_iter(lens, bound))
            hits = {y for y in ends if a <= y <= b}
            out_local |= hits
            if trace is not None:
                trace.append({"r": r, "s": s, "t": t, "lengths": sorted(lens), "ends": hits, "mode": "sumset"})

    if trace is not None:
        trace.append(
            {
                "mode": "window",
                "offset": ri.offset + lo,
                "length": tw.length,
                "taus": part.taus,
                "q_shift": shift,
                "q": rotate(idx.extract(block), shift),
                "qlen": qlen,
                "patterns": [(pp.index, pp.r, pp.mis, sorted(pp.exceptions)) for pp in periodic],
                "allowed": allowed_sorted,
            }
        )
    result.update(y + lo for y in out_local)
    return result


def _trace_entry(pp: _PeriodicPattern, s: int, t: int, hits: set[int], mode: str) -> dict:
    return {"pattern": pp.index, "r": pp.r, "s": s, "t": t, "lengths": [pp.frag.length], "ends": hits, "mode": mode}


def ape_long(inst: ApeInstance, floor: int = 1, z: Optional[int] = None, trace: Optional[list] = None) -> np.ndarray:
    k, m = inst.k, inst.m
    out = inst.empty_output()
    if not inst.patterns:
        return out
    windows = make_restricted(inst, floor)
    cache: dict = {}
    for d in range(k + 1):
        starts = np.flatnonzero(inst.rows[d])
        if starts.size == 0:
            continue
        for kappa in range(k - d + 1):
            row = out[d + kappa]
            for w in windows:
                a = starts[(starts >= w.offset) & (starts < w.offset + w.length)] - w.offset
                if a.size == 0:
                    continue
                ri = replace(w, kappa=kappa, allowed=tuple(a.tolist()))
                for e in solve_restricted(ri, z, cache, trace):
                    g = w.offset + e
                    if g <= m - 1:
                        row[g] = True
    return np.logical_or.accumulate(out, axis=0)

