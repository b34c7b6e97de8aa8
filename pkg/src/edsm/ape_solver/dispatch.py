"""Route patterns to the very-short, short or long solver by length."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import ApeInstance, close_rows
from .long_case import ape_long
from .short_case import ape_short
from .very_short import ape_very_short


@dataclass(frozen=True)
class Bands:
    very_short: int  # lengths in [1, very_short]
    short: int  # lengths in (very_short, short]; the rest is long

    def of(self, length: int) -> str:
        if length <= self.very_short:
            return "very_short"
        if length <= self.short:
            return "short"
        return "long"


def thresholds(m: int) -> tuple[int, int]:
    """B' = ceil(log2(m)^2) and B = ceil(sqrt(m))."""
    lg = math.log2(m) if m > 1 else 0.0
    return math.ceil(lg * lg), math.ceil(math.sqrt(m))


def bands(m: int, k: int) -> Bands:
    b_prime, b = thresholds(m)
    if k == 1:
        return Bands(min(b_prime, b), b)
    return Bands(0, b)


def ape_dispatch(inst: ApeInstance) -> np.ndarray:
    out = inst.empty_output()
    if not inst.patterns or inst.m < 2:
        return out
    bd = bands(inst.m, inst.k)
    split: dict[str, list[int]] = {"very_short": [], "short": [], "long": []}
    for i, p in enumerate(inst.patterns):
        # a pattern as long as the text cannot end at a position <= m-1
        if len(p) <= inst.m - 1:
            split[bd.of(len(p))].append(i)
    if split["very_short"]:
        out |= ape_very_short(inst.select(split["very_short"]), bd.very_short)
    if split["short"]:
        out |= ape_short(inst.select(split["short"]), bd.very_short, bd.short)
    if split["long"]:
        out |= ape_long(inst.select(split["long"]), bd.short + 1)
    return close_rows(out)
