"""Constructed near-periodic restricted instances and the checks run on them."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from _gen import noisy_periodic
from edsm.ape_solver import RestrictedInstance, make_context, solve_restricted

PERIODS = (b"a", b"ab", b"abc", b"aab")


@dataclass
class Built:
    ri: RestrictedInstance
    text: bytes
    patterns: list[bytes]
    kappa: int
    trace: list
    result: set


def build(seed: int) -> Built:
    rng = random.Random(seed)
    kappa = rng.choice([0, 1, 1, 2])
    q = rng.choice(PERIODS if kappa < 2 else PERIODS[:2])
    # patterns up to 1.1 l leave 0.4 l / |q| starts per phase class; that must exceed 864 kappa
    ell = max(60, int(2400 * kappa * len(q))) + rng.randint(0, 50)
    tlen = int(1.5 * ell)
    text = noisy_periodic(rng, q, tlen, rng.randint(0, kappa), phase=rng.randrange(len(q)))
    if kappa == 0 and rng.random() < 0.5:
        # noise at the border only: trimming has to cut it away
        text = b"c" + text[1:]
    pats = []
    for _ in range(rng.randint(1, 4)):
        ln = rng.randint(ell, int(1.1 * ell) - 1)
        pats.append(noisy_periodic(rng, q, ln, rng.randint(0, kappa), phase=rng.randrange(len(q))))
    ctx = make_context(text, pats)
    allowed = tuple(sorted(rng.sample(range(tlen), rng.randint(tlen // 4, tlen))))
    ri = RestrictedInstance(ctx, 0, tlen, float(ell), tuple(range(len(pats))), kappa, allowed)
    trace: list = []
    result = solve_restricted(ri, z=rng.choice([None, 1, 10**6]), trace=trace)
    return Built(ri, text, pats, kappa, trace, result)


def _arr(s: bytes) -> np.ndarray:
    return np.frombuffer(s, dtype=np.uint8)


def distances(p: bytes, t: bytes) -> np.ndarray:
    """Hamming distance of p against every window of t, one numpy comparison per start."""
    pa, ta = _arr(p), _arr(t)
    n = len(t) - len(p) + 1
    return np.array([int(np.count_nonzero(ta[x : x + len(p)] != pa)) for x in range(max(0, n))], dtype=np.int64)


def brute_ext(b: Built) -> set[int]:
    out = set()
    for p in b.patterns:
        dist = distances(p, b.text)
        for x in b.ri.allowed:
            if x < len(dist) and dist[x] <= b.kappa:
                out.add(x + len(p))
    return out


def window(b: Built) -> dict | None:
    for e in b.trace:
        if e.get("mode") == "window":
            return e
    return None


def regions(taus, size):
    bounds = []
    prev = -1
    for t in list(taus) + [size]:
        bounds.append((prev + 1, t))
        prev = t
    return bounds


def region_of(bounds, y):
    for i, (lo, hi) in enumerate(bounds):
        if lo <= y <= hi:
            return i
    return None


def check_case_one(b: Built) -> list[str]:
    """((C_r & A & R_s) + |P|) & R_t equals brute-force Ext on the (s, t) slice whenever case 1 applies."""
    w = window(b)
    bad = []
    lo, size = w["offset"], w["length"]
    t_w = b.text[lo : lo + size]
    bounds = regions(w["taus"], size)
    allowed = [a - lo for a in b.ri.allowed if lo <= a < lo + size]
    for index, r, mis, _ in w["patterns"]:
        p = b.patterns[index]
        dist = distances(p, t_w)
        for s in range(len(bounds)):
            for t in range(s, len(bounds)):
                if len(mis) + t - s > b.kappa:
                    continue
                (s_lo, s_hi), (t_lo, t_hi) = bounds[s], bounds[t]
                formula = {x + len(p) for x in allowed if x % w["qlen"] == r and s_lo <= x <= s_hi and t_lo <= x + len(p) <= t_hi}
                truth = {
                    x + len(p)
                    for x in allowed
                    if s_lo <= x <= s_hi
                    and t_lo <= x + len(p) <= t_hi
                    and dist[x] <= b.kappa
                }
                if formula != truth:
                    bad.append(f"pattern {index} (s={s}, t={t}): {sorted(formula ^ truth)[:5]}")
    return bad


def check_propositions(b: Built) -> tuple[list[str], int]:
    """Region-count identity and the distance split outside E; returns violations and positions checked."""
    w = window(b)
    lo, size = w["offset"], w["length"]
    t_w = b.text[lo : lo + size]
    q = w["q"]
    tbar = (q * (size // len(q) + 2))[:size]
    bounds = regions(w["taus"], size)
    text_mis = np.concatenate(([0], np.cumsum(_arr(t_w) != _arr(tbar))))
    bad, checked = [], 0
    for index, r, mis, exceptions in w["patterns"]:
        p = b.patterns[index]
        exc = set(exceptions)
        dist = distances(p, t_w)
        for x in range(r, size - len(p) + 1, len(q)):
            s, t = region_of(bounds, x), region_of(bounds, x + len(p))
            under = int(text_mis[x + len(p)] - text_mis[x])
            checked += 1
            if under != t - s:
                bad.append(f"region identity fails at x={x}")
            if x not in exc and dist[x] != len(mis) + under:
                bad.append(f"distance split fails at x={x}")
    return bad, checked


def check_bounds(b: Built) -> list[str]:
    w = window(b)
    k = b.kappa
    bad = []
    if len(w["taus"]) > 6 * k:
        bad.append(f"b={len(w['taus'])} > 6k")
    for index, _, _, exceptions in w["patterns"]:
        if len(exceptions) > 12 * k * k:
            bad.append(f"|E|={len(exceptions)} > 12k^2 for pattern {index}")
    return bad
