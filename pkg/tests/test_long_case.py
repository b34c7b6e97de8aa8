import math
import random

import numpy as np
import pytest

from _periodic import brute_ext, build, check_bounds, check_case_one, check_propositions, window
from edsm.ape_solver import (
    RestrictedInstance,
    ape_long,
    ape_naive,
    exception_set,
    from_bits,
    make_context,
    make_restricted,
    region_partition,
    solve_restricted,
)
from edsm.ape_solver.long_case import length_buckets, window_geometry
from edsm.str_index import LceIndex, periodic_mismatches


class TestMakeRestricted:
    def test_bucket_and_step(self):
        inst = from_bits("a" * 100, ["a" * 40], 1, {})
        wins = make_restricted(inst)
        ell = wins[0].ell
        assert ell <= 40 < 1.1 * ell
        assert math.isclose(ell, 1.1 ** round(math.log(ell, 1.1)))
        assert wins[1].offset - wins[0].offset == math.floor(0.4 * ell)

    def test_pattern_longer_than_text(self):
        assert make_restricted(from_bits("ab" * 5, ["a" * 20], 1, {})) == []

    def test_windows_stay_within_one_and_a_half_ell(self):
        for ell in length_buckets(5000):
            _, width = window_geometry(ell)
            assert width <= 1.5 * ell

    @pytest.mark.parametrize("m", [3, 17, 64, 130, 512])
    def test_every_occurrence_lies_in_a_window(self, m):
        pats = sorted({rng_len for rng_len in range(1, m + 1)})
        inst = from_bits("a" * m, [b"a" * ln for ln in pats], 0, {})
        wins = make_restricted(inst)
        for i, ln in enumerate(pats):
            mine = [w for w in wins if i in w.patterns]
            for x in range(m - ln + 1):
                assert any(w.offset <= x and x + ln <= w.offset + w.length for w in mine), (ln, x)

    def test_floor_contract(self):
        with pytest.raises(ValueError):
            make_restricted(from_bits("abab", ["a"], 1, {}), floor=2)


class TestRegionsAndExceptions:
    def test_single_text_mismatch(self):
        idx = LceIndex([b"ababbbabab", b"ab"])
        taus = periodic_mismatches(idx, idx.member(0), idx.member(1), 0, 6)
        part = region_partition(taus, 10)
        assert part.taus == (4,)
        assert [part.bounds(i) for i in range(part.count)] == [(0, 4), (5, 10)]
        assert part.region(4) == 0 and part.region(5) == 1

    def test_exception_set(self):
        assert exception_set([3], [4, 9]) == {1, 6}


def test_solve_restricted_small_exact_example():
    ctx = make_context(b"abababab", [b"abab"])
    ri = RestrictedInstance(ctx, 0, 8, 4.0, (0,), 0, (0, 1, 2))
    assert solve_restricted(ri) == {4, 6}


@pytest.mark.parametrize("seed", range(12))
def test_periodic_windows(seed):
    b = build(seed)
    assert b.result == brute_ext(b)
    if window(b) is None:
        pytest.skip("no periodic pattern in this construction")
    assert check_case_one(b) == []
    bad, checked = check_propositions(b)
    assert bad == [] and checked > 0
    assert check_bounds(b) == []


@pytest.mark.parametrize("z", [1, 10**6])
def test_sumset_and_direct_agree(z):
    b = build(3)
    again = solve_restricted(b.ri, z=z)
    assert again == b.result


def test_ape_long_on_large_periodic_text():
    rng = random.Random(7)
    q = b"ab"
    m = 6000
    text = bytearray((q * m)[:m])
    text[1234] = ord("c")
    pats = [bytes((q * 3000)[:ln]) for ln in (4100, 4150)]
    rows = np.random.default_rng(1).random((2, m)) < 0.5
    inst = from_bits(bytes(text), pats, 1, {})
    inst.rows = rows
    trace: list = []
    out = ape_long(inst, trace=trace)
    assert any(e.get("mode") == "window" for e in trace)
    assert np.array_equal(out, ape_naive(inst))


def test_exception_alignment_is_found():
    """P and T each carry a 'b' in a sea of 'a'; at x=50 the two line up and cancel."""
    p = bytearray(b"a" * 2500)
    p[50] = ord("b")
    t = bytearray(b"a" * 3750)
    t[100] = t[3700] = ord("b")
    p, t = bytes(p), bytes(t)
    ctx = make_context(t, [p])
    ri = RestrictedInstance(ctx, 0, len(t), 2500.0, (0,), 1, tuple(range(len(t))))
    trace: list = []
    got = solve_restricted(ri, trace=trace)
    truth = {x + len(p) for x in range(len(t) - len(p) + 1) if sum(a != c for a, c in zip(p, t[x:])) <= 1}
    assert 50 + len(p) in truth
    assert got == truth
    w = next(e for e in trace if e["mode"] == "window")
    # trimming stops at the last occurrence end (3700), so only the mismatch at 100 survives
    assert w["taus"] == (100 - w["offset"],)
