"""Command line: ``edsm match | gen | selftest | bench``.

JSON output of ``match --json`` is one object::

    {"n": int, "N": int, "c": int, "k": int, "algo": "naive"|"fast",
     "positions": [int, ...], "wall_ms": float}

``positions`` are 0-based symbol indices where an occurrence ends.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .ed_core import EDString, FormatError, Symbol, generate, parse_eds, render_eds
from .edsm_engine import run
from .oracle import edsm_naive

MAX_K = 8


class UsageError(Exception):
    pass


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _k_arg(value: str) -> int:
    k = int(value)
    if not 0 <= k <= MAX_K:
        raise argparse.ArgumentTypeError(f"k must lie in 0..{MAX_K}")
    return k


def _positive(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(value: str) -> int:
    v = int(value)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _prob(value: str) -> float:
    v = float(value)
    if not 0 <= v < 1:
        raise argparse.ArgumentTypeError("must lie in [0, 1)")
    return v


def _m_list(value: str) -> list[int]:
    try:
        out = [int(x) for x in value.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError("expected comma separated integers") from e
    if not out or any(x < 2 for x in out):
        raise argparse.ArgumentTypeError("m values must be >= 2")
    return out


def _symbols(e: EDString) -> list[list[bytes]]:
    return [s.strings() for s in e]


# ---------------------------------------------------------------- match


def cmd_match(args) -> int:
    raw = _read_bytes(args.eds)
    eds = parse_eds(raw.strip())
    if args.pattern_file is not None:
        pattern = _read_bytes(args.pattern_file).strip()
    else:
        pattern = args.pattern.encode()
    if not pattern:
        raise UsageError("pattern must be nonempty")
    algo = "fast" if args.algo == "auto" else args.algo
    t0 = time.perf_counter()
    report = run(pattern, eds, args.k, algo)
    wall = (time.perf_counter() - t0) * 1000
    if args.json:
        out = dict(eds.stats(), k=args.k, algo=algo, positions=list(report), wall_ms=round(wall, 3))
        print(json.dumps(out))
    else:
        for pos in report:
            print(pos)
    return 0


# ---------------------------------------------------------------- gen


def cmd_gen(args) -> int:
    e = generate(args.seed, args.n, args.max_alts, args.max_len, args.alphabet, args.eps_prob)
    text = render_eds(e) + b"\n"
    if args.out in (None, "-"):
        sys.stdout.buffer.write(text)
    else:
        Path(args.out).write_bytes(text)
    return 0


# ---------------------------------------------------------------- selftest


def random_case(rng: random.Random, k_max: int) -> tuple[EDString, bytes, int]:
    e = generate(rng.randrange(2**31), rng.randint(1, 12), 3, 6, b"ACGT", 0.15)
    k = rng.randint(0, k_max)
    m = rng.randint(1, 24)
    spelled = b"".join(rng.choice(s.strings()) for s in e)
    if len(spelled) >= m and rng.random() < 0.7:
        x = rng.randrange(len(spelled) - m + 1)
        p = bytearray(spelled[x : x + m])
        for _ in range(rng.randint(0, k + 1)):
            p[rng.randrange(m)] = rng.choice(b"ACGT")
        return e, bytes(p), k
    return e, bytes(rng.choice(b"ACGT") for _ in range(m)), k


def _disagree(e: EDString, p: bytes, k: int) -> Optional[tuple]:
    want = edsm_naive(p, _symbols(e), k)
    slow = list(run(p, e, k, "naive"))
    fast = list(run(p, e, k, "fast"))
    if want == slow == fast:
        return None
    return want, slow, fast


def shrink(e: EDString, p: bytes, k: int) -> EDString:
    """Greedily drop symbols, then alternatives, while the disagreement persists."""
    changed = True
    while changed:
        changed = False
        syms = list(e.symbols)
        for i in range(len(syms)):
            if len(syms) == 1:
                break
            cand = EDString(tuple(syms[:i] + syms[i + 1 :]))
            if _disagree(cand, p, k):
                e, changed = cand, True
                break
        if changed:
            continue
        for i, sym in enumerate(e.symbols):
            for alt in sorted(sym.alternatives):
                rest = sym.alternatives - {alt}
                if not rest:
                    continue
                syms = list(e.symbols)
                syms[i] = Symbol(rest, sym.epsilon)
                cand = EDString(tuple(syms))
                if _disagree(cand, p, k):
                    e, changed = cand, True
                    break
            if changed:
                break
    return e


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    for case in range(args.cases):
        e, p, k = random_case(rng, args.k_max)
        if _disagree(e, p, k):
            small = shrink(e, p, k)
            want, slow, fast = _disagree(small, p, k)
            print(f"divergence at case {case} (seed {args.seed})")
            print(f"eds: {render_eds(small).decode()}")
            print(f"pattern: {p.decode()}")
            print(f"k: {k}")
            print(f"oracle={want} naive={slow} fast={fast}")
            return 1
    print(f"ok: {args.cases} cases agree")
    return 0


# ---------------------------------------------------------------- bench


def periodic_instance(rng: random.Random, m: int, n: int, k: int) -> tuple[EDString, bytes]:
    """Pattern close to (ACG)^*, symbols with a few noisy periodic alternatives of length m/2..m."""
    period = b"ACG"

    def noisy(length: int, phase: int) -> bytes:
        s = bytearray((period * (length // 3 + 2))[phase : phase + length])
        for _ in range(rng.randint(0, k)):
            s[rng.randrange(length)] = rng.choice(b"ACGT")
        return bytes(s)

    pattern = noisy(m, 0)
    syms = []
    for _ in range(n):
        alts = {noisy(rng.randint(max(1, m // 2), m), rng.randrange(3)) for _ in range(rng.randint(1, 3))}
        syms.append(Symbol(frozenset(alts)))
    return EDString(tuple(syms)), pattern


def fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    lx = np.log2(np.asarray(xs, dtype=float))
    ly = np.log2(np.maximum(np.asarray(ys, dtype=float), 1e-9))
    return float(np.polyfit(lx, ly, 1)[0])


def cmd_bench(args) -> int:
    rng = random.Random(0)
    rows = []
    for m in args.m_list:
        eds, pattern = periodic_instance(rng, m, args.n, args.k)
        for algo in ("naive", "fast"):
            for _ in range(args.repeats):
                # only the APE stage differs between the two algorithms, so that is what we time
                timings: dict = {}
                run(pattern, eds, args.k, algo, timings)
                rows.append((m, args.n, args.k, algo, round(timings["ape_s"] * 1000, 3)))
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["m", "n", "k", "algo", "wall_ms"])
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    slope, ratio = summarize(rows)
    print(f"slope(fast wall_ms vs m, log-log) = {slope:.3f}; naive/fast at m={max(args.m_list)}: {ratio:.2f}")
    return 0


def summarize(rows) -> tuple[float, float]:
    """Log-log slope of median fast time against m, and naive/fast ratio at the largest m."""
    cells: dict[tuple[int, str], list[float]] = {}
    for m, _, _, algo, ms in rows:
        cells.setdefault((m, algo), []).append(ms)
    ms_sorted = sorted({m for m, _ in cells})
    med = {key: float(np.median(v)) for key, v in cells.items()}
    slope = fit_slope(ms_sorted, [med[(m, "fast")] for m in ms_sorted]) if len(ms_sorted) >= 2 else float("nan")
    top = ms_sorted[-1]
    ratio = med[(top, "naive")] / max(med[(top, "fast")], 1e-9)
    return slope, ratio


# ---------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edsm", description="Elastic-degenerate string matching with k mismatches")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="report end positions of approximate occurrences")
    p.add_argument("--eds", required=True, help="file with the ED-string")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--pattern")
    src.add_argument("--pattern-file")
    p.add_argument("--k", type=_k_arg, default=0)
    p.add_argument("--algo", choices=["auto", "naive", "fast"], default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_match)

    g = sub.add_parser("gen", help="write a random ED-string")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--n", type=_positive, default=10)
    g.add_argument("--max-alts", type=_positive, default=3)
    g.add_argument("--max-len", type=_positive, default=6)
    g.add_argument("--alphabet", default="ACGT")
    g.add_argument("--eps-prob", type=_prob, default=0.0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("selftest", help="compare fast and naive paths against the oracle")
    s.add_argument("--cases", type=_positive, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k-max", type=_nonneg, default=2)
    s.set_defaults(func=cmd_selftest)

    b = sub.add_parser("bench", help="time naive vs fast on periodic instances")
    b.add_argument("--m-list", type=_m_list, default=[256, 512, 1024])
    b.add_argument("--n", type=_positive, default=64)
    b.add_argument("--k", type=_k_arg, default=1)
    b.add_argument("--repeats", type=_positive, default=1)
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (FormatError, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
