import itertools
import random

import pytest
from hypothesis import given, strategies as st

from gen import all_strings
from omegabwt.strings import (EbwtResult, GcaEntry, RootDecomposition, SeqCollection,
                              border_array, conjugate,
                              ebwt_from_gca, expand_gca, omega_compare, root_and_exponent,
                              smallest_int_period, smallest_period)

dna = st.binary(min_size=1, max_size=16).map(lambda b: bytes(b"ACGT"[x % 4] for x in b))


def brute_borders(T):
    return [max((k for k in range(i + 1) if T[:k] == T[i + 1 - k:i + 1]), default=0)
            for i in range(len(T))]


def is_primitive(U):
    return all(U != U[:d] * (len(U) // d) for d in range(1, len(U)) if len(U) % d == 0)


def test_border_array_examples():
    assert border_array(b"banana") == [0] * 6
    assert border_array(b"abab") == [0, 0, 1, 2]
    assert border_array(b"aaaa") == [0, 1, 2, 3]


@given(st.binary(min_size=1, max_size=24).map(lambda b: bytes(b"ab"[x % 2] for x in b)))
def test_border_array_matches_brute_force(T):
    assert border_array(T) == brute_borders(T)


def test_root_and_exponent_examples():
    assert root_and_exponent(b"TATA") == RootDecomposition(b"TA", 2)
    assert root_and_exponent(b"ATA") == RootDecomposition(b"ATA", 1)
    assert root_and_exponent(b"CCC") == RootDecomposition(b"C", 3)


def test_root_and_exponent_exhaustive_binary():
    for T in all_strings(b"ab", 12):
        dec = root_and_exponent(T)
        root, k = dec.root, dec.exponent
        assert root * k == T
        assert is_primitive(root)


def test_root_rejects_empty():
    with pytest.raises(ValueError):
        root_and_exponent(b"")


def test_integer_period():
    assert smallest_int_period([3, 1, 3, 1, 3, 1]) == 2
    assert smallest_int_period([300, 70000, 300]) == 3
    assert smallest_int_period([5]) == 1
    assert smallest_period(b"abcabc") == 3


def test_conjugate():
    assert conjugate(b"CGGCACACACGT", 8) == b"CACGTCGGCACA"
    assert conjugate(b"abc", 1) == b"abc"
    with pytest.raises(IndexError):
        conjugate(b"abc", 4)
    with pytest.raises(IndexError):
        conjugate(b"abc", 0)


def test_omega_compare_examples():
    assert omega_compare(b"CACGTCGGCACA", b"C") == -1
    assert omega_compare(b"TA", b"TATA") == -1  # same root: smaller exponent first
    assert omega_compare(b"AB", b"ABA") == 1  # ABAB... > ABAA...
    assert omega_compare(b"ACGT", b"ACGT") == 0


def test_omega_compare_against_powers_exhaustive():
    strings = list(all_strings(b"ACGT", 4))
    for S, T in itertools.product(strings, repeat=2):
        k = len(S) + len(T)
        lex = (S * k > T * k) - (S * k < T * k)
        assert omega_compare(S, T) == lex


@given(dna, dna, dna)
def test_omega_compare_is_total_preorder(S, T, U):
    assert omega_compare(S, T) == -omega_compare(T, S)
    if omega_compare(S, T) <= 0 and omega_compare(T, U) <= 0:
        assert omega_compare(S, U) <= 0


@given(dna, dna)
def test_omega_equal_only_for_identical(S, T):
    assert (omega_compare(S, T) == 0) == (S == T)


@given(dna, st.integers(1, 4), st.integers(1, 4))
def test_omega_powers_follow_exponent(S, a, b):
    root = root_and_exponent(S).root
    assert omega_compare(root * a, root * b) == (a > b) - (a < b)


def test_expand_gca_example():
    # root TA squared: every entry gets a second copy one period later
    roots = [GcaEntry(2, 1), GcaEntry(1, 1)]
    assert expand_gca(roots, [2], [2]) == [GcaEntry(2, 1), GcaEntry(4, 1),
                                           GcaEntry(1, 1), GcaEntry(3, 1)]
    with pytest.raises(ValueError):
        expand_gca(roots, [0], [2])


def test_ebwt_from_gca_mixed():
    gca = [GcaEntry(j, d) for j, d in zip(
        [5, 3, 5, 7, 6, 9, 4, 4, 6, 8, 1, 1, 7, 10, 3, 2, 8, 1, 11, 2, 12],
        [1, 1, 2, 2, 1, 2, 1, 2, 2, 2, 3, 2, 1, 2, 2, 2, 1, 1, 2, 1, 2])]
    coll = SeqCollection.from_seqs([b"GTACAACG", b"CGGCACACACGT", b"C"])
    res = ebwt_from_gca(coll, gca)
    assert res == EbwtResult(b"CTCCACAGAACTAAGCCGCGG", [11, 12, 18])


def test_collection_validation():
    with pytest.raises(ValueError):
        SeqCollection.from_seqs([b"AC", b""])
    coll = SeqCollection.from_seqs(["acg", b"T"])
    assert coll.m == 2 and coll.N == 4 and coll.seqs == [b"acg", b"T"]


def test_run_heads_and_tails():
    res = EbwtResult(b"AAB", [1], [(1, GcaEntry(1, 1)), (2, GcaEntry(2, 1)), (3, GcaEntry(3, 1))])
    assert [i for i, _ in res.run_heads()] == [1, 3]
    assert [i for i, _ in res.run_tails()] == [2, 3]


def test_random_conjugates_round_trip():
    rng = random.Random(3)
    for _ in range(200):
        T = bytes(rng.choice(b"ACGT") for _ in range(rng.randint(1, 20)))
        i = rng.randint(1, len(T))
        C = conjugate(T, i)
        assert sorted(C) == sorted(T) and C in T + T
