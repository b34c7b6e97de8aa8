"""Left-to-right EDSM driver.

The state after symbol i is a stack of bit rows B_0..B_k over prefix lengths
of P: B_d[j] is set when P[..j) matches, with at most d mismatches, a suffix
of some string spelled by the symbols up to i.  Moving to the next symbol is
one APE call (text P, patterns = the symbol's strings) plus the prefixes that
start inside the symbol.  Occurrences are reported when a symbol either holds
a whole approximate copy of P or completes a prefix carried in the rows.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Literal, Optional

import numpy as np

from .ape_solver import ApeContext, ApeInstance, TextTools, ape_dispatch, ape_naive
from .ed_core import EDString, MatchReport, Symbol
from .str_index import LceIndex, hamming_many

log = logging.getLogger(__name__)

Algo = Literal["naive", "fast"]


@dataclass
class EngineState:
    pattern: bytes
    k: int
    idx: LceIndex
    member: dict[bytes, int]  # alternative -> member index in idx
    tools: TextTools
    rows: np.ndarray  # (k+1, m) bool
    i: int = -1
    reports: list[int] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.pattern)

    def frag(self, alt: bytes):
        return self.idx.member(self.member[alt])

    def min_budget(self) -> np.ndarray:
        """Per prefix length the smallest d with B_d set, k+1 when unset."""
        r = self.rows
        return np.where(r.any(axis=0), r.argmax(axis=0), self.k + 1)


def initial_state(pattern: bytes, eds: EDString, k: int) -> EngineState:
    if not pattern:
        raise ValueError("pattern must be nonempty")
    if k < 0:
        raise ValueError("k must be nonnegative")
    alts = sorted({a for sym in eds for a in sym.alternatives})
    idx = LceIndex([pattern, *alts])
    rows = np.zeros((k + 1, len(pattern)), dtype=bool)
    rows[:, 0] = True
    return EngineState(pattern, k, idx, {a: i + 1 for i, a in enumerate(alts)}, TextTools(pattern), rows)


def scan_symbol_full(state: EngineState, symbol: Symbol) -> bool:
    """Does some alternative contain a window within k of P?"""
    m, k = state.m, state.k
    p0 = state.idx.starts[0]
    for alt in symbol.alternatives:
        if len(alt) < m:
            continue
        f = state.frag(alt)
        xs = f.start + np.arange(len(alt) - m + 1)
        if (hamming_many(state.idx, np.full(len(xs), p0), xs, m, k) <= k).any():
            return True
    return False


def prefixes_within_symbol(state: EngineState, symbol: Symbol) -> np.ndarray:
    """Rows marking prefixes of P (shorter than P) that match a suffix of an alternative."""
    m, k = state.m, state.k
    out = np.zeros_like(state.rows)
    p0 = state.idx.starts[0]
    for alt in symbol.alternatives:
        f = state.frag(alt)
        lens = np.arange(1, min(m - 1, f.length) + 1)
        if lens.size == 0:
            continue
        dist = hamming_many(state.idx, np.full(len(lens), p0), f.start + f.length - lens, lens, k)
        for d in range(k + 1):
            out[d, lens[dist <= d]] = True
    return out


def report_boundary(state: EngineState, symbol: Symbol) -> bool:
    """Can a carried prefix be completed by a prefix of some alternative?"""
    m, k = state.m, state.k
    low = state.min_budget()
    p0 = state.idx.starts[0]
    live = np.flatnonzero(low[1:] <= k) + 1
    if live.size == 0:
        return False
    for alt in symbol.alternatives:
        f = state.frag(alt)
        js = live[live >= m - f.length]
        if js.size == 0:
            continue
        budget = k - low[js]
        dist = hamming_many(state.idx, p0 + js, np.full(len(js), f.start), m - js, k)
        if (dist <= budget).any():
            return True
    return False


def step(state: EngineState, symbol: Symbol, ape: Callable[[ApeInstance], np.ndarray]) -> EngineState:
    alts = sorted(symbol.alternatives)
    new = prefixes_within_symbol(state, symbol)
    if state.m > 1:
        ctx = ApeContext(state.idx, state.idx.member(0), [state.frag(a) for a in alts], state.tools)
        inst = ApeInstance(state.pattern, alts, state.k, state.rows, ctx)
        new |= ape(inst)
    if symbol.epsilon:
        new |= state.rows
    new[:, 0] = True
    state.rows = np.logical_or.accumulate(new, axis=0)
    state.i += 1
    return state


def run(
    pattern: bytes | str, eds: EDString, k: int, algo: Algo = "fast", timings: Optional[dict] = None
) -> MatchReport:
    """End positions of k-mismatch occurrences; ``timings`` collects APE-stage seconds."""
    if isinstance(pattern, str):
        pattern = pattern.encode()
    solver = {"naive": ape_naive, "fast": ape_dispatch}.get(algo)
    if solver is None:
        raise ValueError(f"unknown algo {algo!r}")
    ape = solver
    if timings is not None:
        timings.setdefault("ape_s", 0.0)

        def ape(inst: ApeInstance) -> np.ndarray:
            t0 = time.perf_counter()
            out = solver(inst)
            timings["ape_s"] += time.perf_counter() - t0
            return out

    state = initial_state(pattern, eds, k)
    for i, symbol in enumerate(eds):
        if report_boundary(state, symbol) or scan_symbol_full(state, symbol):
            state.reports.append(i)
        step(state, symbol, ape)
    log.debug("processed %d symbols, %d reports", len(eds), len(state.reports))
    return MatchReport.from_positions(state.reports, len(eds))


def prefix_rows(pattern: bytes, eds: EDString, k: int, upto: int, algo: Algo = "fast") -> Optional[np.ndarray]:
    """The B rows after symbol ``upto``; used to check row semantics in tests."""
    ape = ape_naive if algo == "naive" else ape_dispatch
    state = initial_state(pattern, eds, k)
    for i, symbol in enumerate(eds):
        step(state, symbol, ape)
        if i == upto:
            return state.rows.copy()
    return None
