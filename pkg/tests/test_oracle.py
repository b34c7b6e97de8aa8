import numpy as np

from edsm.ape_solver import ape_naive, from_bits
from edsm.occ_struct import occ_scan
from edsm.oracle import ape_bruteforce, edsm_naive, occ_naive, sumset_naive
from edsm.str_index import LceIndex


def test_edsm_examples():
    assert edsm_naive(b"ABCB", [[b"AB"], [b"C", b"X"], [b"BA"]], 1) == [2]
    assert edsm_naive(b"ABBA", [[b"AB"], [b"C", b""], [b"BA"]], 0) == [2]
    assert edsm_naive(b"GG", [[b"AC"], [b"CA"]], 0) == []


def test_occ_example():
    assert occ_naive(b"aa", b"abaa", 1) == [0, 1, 2]


def test_ape_bruteforce_matches_naive_example():
    inst = from_bits("abcd", ["bc"], 1, {0: [1]})
    got = np.array(ape_bruteforce(inst.text, inst.patterns, inst.k, inst.rows.tolist()))
    assert np.array_equal(got, ape_naive(inst))


def test_sumset_example():
    assert sumset_naive({0, 2}, {3, 5}) == {3, 5, 7}


def test_occ_naive_vs_kangaroo():
    for p, t in [(b"ab", b"abbaab"), (b"aaa", b"aabaaa"), (b"c", b"abc")]:
        idx = LceIndex([p, t])
        for kappa in range(3):
            assert occ_naive(p, t, kappa) == occ_scan(idx, idx.member(0), idx.member(1), kappa)


def test_oracle_has_no_fast_path_imports():
    import edsm.oracle as o

    src = open(o.__file__).read()
    assert "from ." not in src and "import edsm" not in src
