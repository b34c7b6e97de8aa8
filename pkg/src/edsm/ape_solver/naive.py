"""Reference APE solver: the definition, one pattern and one start at a time."""

from __future__ import annotations

import numpy as np

from .instance import ApeInstance


def ape_naive(inst: ApeInstance) -> np.ndarray:
    k, m = inst.k, inst.m
    out = inst.empty_output()
    text = np.frombuffer(inst.text, dtype=np.uint8)
    for p in set(inst.patterns):
        ln = len(p)
        if ln > m - 1:
            continue
        pa = np.frombuffer(p, dtype=np.uint8)
        for j in range(m - ln):
            live = np.flatnonzero(inst.rows[:, j])
            if live.size == 0:
                continue
            dist = int(np.count_nonzero(text[j : j + ln] != pa))
            for d in live:
                if d + dist <= k:
                    out[d + dist :, j + ln] = True
    return out
