import random

import numpy as np
import pytest

from _gen import eds_case, symbols
from edsm.ape_solver import ape_naive
from edsm.ed_core import Symbol, generate, parse_eds
from edsm.edsm_engine import (
    initial_state,
    prefix_rows,
    prefixes_within_symbol,
    report_boundary,
    run,
    scan_symbol_full,
    step,
)
from edsm.oracle import edsm_naive, prefix_suffix_naive


def state_for(pattern: bytes, *alts: bytes, k: int = 0):
    return initial_state(pattern, parse_eds("{" + ",".join(a.decode() for a in alts) + "}"), k)


class TestScan:
    def test_exact_inside(self):
        st = state_for(b"ABC", b"xABCy")
        assert scan_symbol_full(st, Symbol.of("xABCy"))

    def test_too_short(self):
        st = state_for(b"ABC", b"AB")
        assert not scan_symbol_full(st, Symbol.of("AB"))

    def test_one_mismatch(self):
        st = state_for(b"ABC", b"xADCy", k=1)
        assert scan_symbol_full(st, Symbol.of("xADCy"))


class TestPrefixes:
    def test_exact_suffix(self):
        st = state_for(b"BCD", b"BC")
        assert prefixes_within_symbol(st, Symbol.of("BC"))[0, 2]

    def test_one_mismatch(self):
        st = state_for(b"BCD", b"XC", k=1)
        out = prefixes_within_symbol(st, Symbol.of("XC"))
        assert out[1, 2] and not out[0, 2]

    def test_epsilon_contributes_nothing(self):
        st = state_for(b"BCD", b"Z")
        out = prefixes_within_symbol(st, Symbol.of("", "Z"))
        assert not out[:, 1:].any()


class TestStep:
    def test_propagation(self):
        e = parse_eds("{AB}{C}")
        st = initial_state(b"ABCX", e, 0)
        step(st, e[0], ape_naive)
        assert st.rows[0, 2]
        step(st, e[1], ape_naive)
        assert st.rows[0, 3]

    def test_epsilon_keeps_rows(self):
        e = parse_eds("{AB}{Z,}")
        st = initial_state(b"ABCX", e, 1)
        step(st, e[0], ape_naive)
        before = st.rows.copy()
        step(st, e[1], ape_naive)
        assert (st.rows >= before).all()

    def test_empty_prefix_always_set(self):
        e = parse_eds("{GG}")
        st = initial_state(b"ACAC", e, 0)
        step(st, e[0], ape_naive)
        assert st.rows[:, 0].all() and not st.rows[:, 1:].any()


class TestBoundary:
    def test_exact_completion(self):
        st = state_for(b"ABCD", b"CDE")
        st.rows[0, 2] = True
        assert report_boundary(st, Symbol.of("CDE"))

    def test_budget_exhausted(self):
        st = state_for(b"ABCD", b"CXE", k=1)
        st.rows[:, :] = False
        st.rows[1, 2] = True
        assert not report_boundary(st, Symbol.of("CXE"))


class TestRun:
    def test_examples(self):
        assert list(run("ABCB", parse_eds("{AB}{C,X}{BA}"), 1)) == [2]
        assert list(run("ABBA", parse_eds("{AB}{C,}{BA}"), 0)) == [2]
        assert list(run("ABCDEFGH", parse_eds("{AB}{C}"), 2)) == []

    def test_unknown_algo(self):
        with pytest.raises(ValueError):
            run("A", parse_eds("A"), 0, "quantum")

    @pytest.mark.parametrize("seed", range(0, 300, 3))
    def test_fast_naive_oracle_agree(self, seed):
        e, p, k = eds_case(seed, k_choices=(0, 1, 2, 3))
        want = edsm_naive(p, symbols(e), k)
        assert list(run(p, e, k, "naive")) == want
        assert list(run(p, e, k, "fast")) == want

    def test_k_at_least_m_reports_every_reachable_end(self):
        rng = random.Random(5)
        for _ in range(40):
            e = generate(rng.randrange(1000), rng.randint(1, 6), 2, 3, b"AC", 0.2)
            p = bytes(rng.choice(b"GT") for _ in range(rng.randint(1, 4)))
            got = list(run(p, e, len(p)))
            assert got == edsm_naive(p, symbols(e), len(p))

    def test_row_semantics(self):
        for seed in range(120):
            rng = random.Random(seed)
            e = generate(seed, rng.randint(1, 5), 2, 3, b"AC", 0.25)
            k = rng.randint(0, 2)
            p = bytes(rng.choice(b"AC") for _ in range(rng.randint(1, 7)))
            for i in range(len(e)):
                want = np.array(prefix_suffix_naive(p, symbols(e), k, i))
                assert np.array_equal(prefix_rows(p, e, k, i), want)
