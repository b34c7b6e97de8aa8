import itertools
import random

import pytest

from _gen import noisy_periodic
from edsm.occ_struct import (
    Explicit,
    Periodic,
    PeriodCert,
    analyze,
    extract_period,
    majority_period,
    occ_scan,
    periodic_distance,
    rep_contains,
)
from edsm.oracle import hamming, occ_naive
from edsm.str_index import LceIndex, Progression, is_primitive


def pair(p: bytes, t: bytes):
    idx = LceIndex([p, t])
    return idx, idx.member(0), idx.member(1)


class TestOccScan:
    def test_examples(self):
        assert occ_scan(*pair(b"aa", b"abaa"), 1) == [0, 1, 2]
        assert occ_scan(*pair(b"acgt", b"acgt"), 0) == [0]
        assert occ_scan(*pair(b"ab", b"cdcd"), 0) == []

    def test_agrees_with_naive(self):
        rng = random.Random(0)
        for _ in range(400):
            t = bytes(rng.choice(b"ab") for _ in range(rng.randint(1, 60)))
            p = bytes(rng.choice(b"ab") for _ in range(rng.randint(1, len(t))))
            kappa = rng.randint(0, 3)
            assert occ_scan(*pair(p, t), kappa) == occ_naive(p, t, kappa)


class TestExtractPeriod:
    def test_exact_period(self):
        cert = extract_period(b"ab" * 256, 1)
        assert cert.q == b"ab" and cert.pat_mismatches == ()

    def test_one_loser(self):
        cert = extract_period(b"ababcbab" + b"ab" * 252, 1)
        assert cert.q == b"ab" and cert.pat_mismatches == (4,)

    def test_random_string_has_none(self):
        rng = random.Random(3)
        p = bytes(rng.choice(b"acgt") for _ in range(512))
        assert extract_period(p, 1) is None
        # no candidate q of admissible length gets under 2 mismatches
        for ln in range(1, len(p) // 128 + 1):
            for q in itertools.product(b"acgt", repeat=ln):
                assert len(periodic_distance(p, bytes(q))) >= 2

    def test_rejects_zero_budget(self):
        with pytest.raises(ValueError):
            extract_period(b"aaaa", 0)


@pytest.mark.parametrize("qlen", [1, 2, 3])
def test_majority_vote_is_optimal(qlen):
    rng = random.Random(qlen)
    for _ in range(60):
        p = bytes(rng.choice(b"ab") for _ in range(rng.randint(qlen, 12)))
        best = min(len(periodic_distance(p, bytes(q))) for q in itertools.product(b"ab", repeat=qlen))
        assert len(periodic_distance(p, majority_period(p, qlen))) == best


class TestAnalyze:
    def test_long_unary_run_is_periodic(self):
        rep = analyze(*pair(b"a" * 2000, b"a" * 3000), 1)
        assert isinstance(rep, Periodic)
        assert rep.cert.q == b"a"
        assert rep.progressions == (Progression(0, 1, 1001),)

    def test_small_example_is_explicit(self):
        assert analyze(*pair(b"aa", b"abaa"), 1) == Explicit((0, 1, 2))

    def test_no_occurrence(self):
        assert analyze(*pair(b"zz", b"abab"), 0) == Explicit(())

    def test_exact_periodic_without_budget(self):
        p, t = b"ab" * 20, b"ab" * 29
        rep = analyze(*pair(p, t), 0)
        assert isinstance(rep, Periodic) and rep.materialize() == occ_naive(p, t, 0)

    @pytest.mark.parametrize("seed", range(8))
    def test_periodic_certificate_contract(self, seed):
        rng = random.Random(seed)
        kappa = rng.choice([1, 2])
        q = rng.choice([b"a", b"ab", b"abc"])
        plen = 2000 * kappa + rng.randint(0, 200)
        p = noisy_periodic(rng, q, plen, rng.randint(0, kappa))
        t = noisy_periodic(rng, q, int(1.5 * plen), rng.randint(0, 2), phase=rng.randrange(len(q)))
        rep = analyze(*pair(p, t), kappa)
        assert rep.materialize() == occ_naive(p, t, kappa)
        if isinstance(rep, Periodic):
            cert = rep.cert
            assert is_primitive(cert.q) and len(cert.q) <= plen / (128 * kappa)
            pbar = bytes(cert.q[(cert.r + i) % len(cert.q)] for i in range(plen))
            assert hamming(p, pbar) == len(cert.pat_mismatches) < 2 * kappa
            assert all(x % len(cert.q) == cert.r for x in rep.materialize())
        else:
            assert len(rep) <= 864 * kappa


def test_rep_contains():
    rep = Periodic(PeriodCert(b"ab", 0, ()), (Progression(0, 2, 5),))
    assert rep_contains(rep, 6)
    assert not rep_contains(rep, 5)
    assert rep_contains(Explicit((0, 1, 2)), 2)
