"""Elastic-degenerate strings: data model, text format, random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

ALNUM = frozenset(b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789")


class FormatError(ValueError):
    """Raised when EDS text cannot be parsed. ``offset`` is the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Symbol:
    """A finite set of strings. The empty string is kept as a flag."""

    alternatives: frozenset[bytes]
    epsilon: bool = False

    def __post_init__(self):
        if not self.alternatives:
            raise ValueError("symbol must contain a nonempty alternative")
        if b"" in self.alternatives:
            raise ValueError("empty alternative must be given via the epsilon flag")

    @classmethod
    def of(cls, *alts: bytes | str) -> "Symbol":
        raw = [a.encode() if isinstance(a, str) else bytes(a) for a in alts]
        return cls(frozenset(a for a in raw if a), epsilon=b"" in raw)

    @property
    def size(self) -> int:
        return sum(map(len, self.alternatives)) + int(self.epsilon)

    @property
    def cardinality(self) -> int:
        return len(self.alternatives) + int(self.epsilon)

    def strings(self) -> list[bytes]:
        """Alternatives in canonical order, ``b""`` last when present."""
        out = sorted(self.alternatives)
        if self.epsilon:
            out.append(b"")
        return out


@dataclass(frozen=True)
class EDString:
    symbols: tuple[Symbol, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i: int) -> Symbol:
        return self.symbols[i]

    def __iter__(self):
        return iter(self.symbols)

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def size(self) -> int:
        """N: total alternative length, each epsilon counted as 1."""
        return sum(s.size for s in self.symbols)

    @property
    def cardinality(self) -> int:
        return sum(s.cardinality for s in self.symbols)

    def stats(self) -> dict[str, int]:
        return {"n": self.n, "N": self.size, "c": self.cardinality}


@dataclass(frozen=True)
class MatchReport:
    """Symbol indices where at least one approximate occurrence ends."""

    end_positions: tuple[int, ...]

    @classmethod
    def from_positions(cls, positions: Iterable[int], n: int) -> "MatchReport":
        out = tuple(sorted(set(positions)))
        if out and (out[0] < 0 or out[-1] >= n):
            raise ValueError("reported position out of range")
        return cls(out)

    def __iter__(self):
        return iter(self.end_positions)

    def __len__(self) -> int:
        return len(self.end_positions)


def parse_eds(text: bytes | str) -> EDString:
    if isinstance(text, str):
        text = text.encode()
    symbols: list[Symbol] = []
    i, n = 0, len(text)
    if n == 0:
        raise FormatError("empty ED-string", 0)
    while i < n:
        c = text[i]
        if c == ord("{"):
            start = i
            alts: list[bytes] = []
            cur = i + 1
            j = cur
            while True:
                if j >= n:
                    raise FormatError("unbalanced '{'", start)
                b = text[j]
                if b == ord(",") or b == ord("}"):
                    alts.append(bytes(text[cur:j]))
                    cur = j + 1
                    if b == ord("}"):
                        break
                elif b not in ALNUM:
                    raise FormatError(f"illegal byte {b!r}", j)
                j += 1
            if not any(alts):
                raise FormatError("symbol must contain a nonempty alternative", start)
            symbols.append(Symbol.of(*alts))
            i = j + 1
        elif c in ALNUM:
            j = i
            while j < n and text[j] in ALNUM:
                j += 1
            symbols.append(Symbol(frozenset([bytes(text[i:j])])))
            i = j
        elif c == ord("}"):
            raise FormatError("unbalanced '}'", i)
        else:
            raise FormatError(f"illegal byte {c!r}", i)
    return EDString(tuple(symbols))


def render_eds(e: EDString) -> bytes:
    parts: list[bytes] = []
    prev_plain = False
    for sym in e.symbols:
        # a plain run directly after another plain run would merge on re-parse
        if len(sym.alternatives) == 1 and not sym.epsilon and not prev_plain:
            parts.append(next(iter(sym.alternatives)))
            prev_plain = True
        else:
            parts.append(b"{" + b",".join(sym.strings()) + b"}")
            prev_plain = False
    return b"".join(parts)


def generate(
    seed: int,
    n: int,
    max_alts: int,
    max_len: int,
    alphabet: bytes | str = b"ACGT",
    eps_prob: float = 0.0,
) -> EDString:
    """Random ED-string, deterministic for a fixed seed."""
    if isinstance(alphabet, str):
        alphabet = alphabet.encode()
    if n < 1 or max_alts < 1 or max_len < 1:
        raise ValueError("n, max_alts and max_len must be >= 1")
    if not 0 <= eps_prob < 1:
        raise ValueError("eps_prob must lie in [0, 1)")
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    rng = random.Random(seed)
    letters = sorted(set(alphabet))
    symbols = []
    for _ in range(n):
        alts = set()
        for _ in range(rng.randint(1, max_alts)):
            length = rng.randint(1, max_len)
            alts.add(bytes(rng.choice(letters) for _ in range(length)))
        eps = rng.random() < eps_prob
        symbols.append(Symbol(frozenset(alts), epsilon=eps))
    return EDString(tuple(symbols))


def language(e: EDString, limit: int = 100_000) -> list[bytes]:
    """All strings of L(e); refuses to enumerate more than ``limit``."""
    out = [b""]
    for sym in e.symbols:
        out = [x + y for x in out for y in sym.strings()]
        if len(out) > limit:
            raise ValueError("language too large to enumerate")
    return sorted(set(out))


def from_strings(symbols: Sequence[Sequence[bytes | str]]) -> EDString:
    return EDString(tuple(Symbol.of(*alts) for alts in symbols))
