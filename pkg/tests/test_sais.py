import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gen import random_collection
from omegabwt import _backend
from omegabwt.oracle import oracle_ebwt, oracle_gca
from omegabwt.sais import (assign_types, bwt_single, conjugate_array, default_seeds, ebwt,
                           induced_sort, name_lms_substrings, sais_gca)
from omegabwt.strings import GcaEntry, SeqCollection

MIXED = SeqCollection.from_seqs([b"GTACAACG", b"CGGCACACACGT", b"C"])
MIXED_LONG = SeqCollection.from_seqs([b"GTACAACG", b"CGGCACACACGT"])


def entries(pairs):
    return [GcaEntry(j, d) for j, d in pairs]


@pytest.mark.parametrize("text,types,lms", [
    ("GTACAACG", "SLSLSSSS", [3, 5]),
    ("CGGCACACACGT", "SLLLSLSLSSSL", [1, 5, 7, 9]),
    ("banana", "LSLSLS", [2, 4, 6]),
])
def test_assign_types(text, types, lms):
    ta = assign_types(text)
    assert ta.types == types
    assert ta.lms_positions == lms


def test_assign_types_rejects_unary():
    with pytest.raises(ValueError):
        assign_types("aaaa")


@given(st.binary(min_size=2, max_size=30).map(lambda b: bytes(b"acgt"[x % 4] for x in b)))
def test_lms_never_adjacent(T):
    if len(set(T)) < 2:
        return
    lms = assign_types(T).lms
    assert not any(lms[i] and lms[i - 1] for i in range(len(T)))


def test_lms_pass_order():
    A = induced_sort(MIXED_LONG, default_seeds(MIXED_LONG))
    assert A == entries([(5, 1), (5, 2), (7, 2), (3, 1), (6, 1), (9, 2),
                         (4, 2), (6, 2), (8, 2), (4, 1), (1, 2), (7, 1), (10, 2),
                         (3, 2), (2, 2), (8, 1), (1, 1), (11, 2),
                         (2, 1), (12, 2)])


def test_naming_mixed():
    A = induced_sort(MIXED_LONG, default_seeds(MIXED_LONG))
    naming = name_lms_substrings(MIXED_LONG, A)
    assert naming.reduced == [[1, 0], [3, 1, 1, 2]]  # "ba", "dbbc"
    assert not naming.all_distinct
    assert naming.names[GcaEntry(5, 1)] == 0  # AACGGTA -> a


def test_banana_traces():
    coll = SeqCollection.from_seqs([b"banana"])
    A = induced_sort(coll, default_seeds(coll))
    assert [e.pos for e in A] == [6, 2, 4, 1, 3, 5]
    assert name_lms_substrings(coll, A).reduced == [[1, 1, 0]]
    gca, index = sais_gca(coll)
    assert [e.pos for e in gca] == [6, 4, 2, 1, 5, 3] and index == [4]


def test_identical_two_letter_docs():
    coll = SeqCollection.from_seqs([b"AB", b"AB"])
    naming = name_lms_substrings(coll, induced_sort(coll, default_seeds(coll)))
    assert naming.reduced == [[0], [0]] and not naming.all_distinct
    res = ebwt(coll)
    assert (res.bwt, res.index_set) == (b"BBAA", [1, 2])


def test_induced_sort_rejects_non_lms_seed():
    with pytest.raises(ValueError):
        induced_sort(MIXED_LONG, [GcaEntry(1, 1)])


def test_sais_gca_mixed(backend):
    gca, index = sais_gca(MIXED, backend=backend)
    assert gca == oracle_gca(MIXED)
    assert index == [11, 12, 18]


def test_sais_gca_rejects_powers():
    with pytest.raises(ValueError):
        sais_gca(SeqCollection.from_seqs([b"TATA"]))


def test_ebwt_examples(backend):
    assert ebwt(MIXED, backend=backend).bwt == b"CTCCACAGAACTAAGCCGCGG"
    r = ebwt(SeqCollection.from_seqs([b"ATA", b"TATA"]), backend=backend)
    assert (r.bwt, r.index_set) == (b"TATTAAA", [2, 6])
    r = ebwt(SeqCollection.from_seqs([b"ATA", b"TA", b"TA"]), backend=backend)
    assert (r.bwt, r.index_set) == (b"TATTAAA", [2, 6, 7])
    assert bwt_single("banana", backend=backend) == (b"nnbaaa", 4)


def test_only_length_one_docs(backend):
    r = ebwt(SeqCollection.from_seqs([b"C", b"A", b"C"]), backend=backend)
    assert (r.bwt, r.index_set) == (b"ACC", [1, 2, 3])


def test_random_against_oracle(backend):
    rng = random.Random(11)
    for _ in range(400):
        coll = SeqCollection.from_seqs(random_collection(rng))
        got, want = ebwt(coll, backend=backend), oracle_ebwt(coll)
        assert (got.bwt, got.index_set) == (want.bwt, want.index_set)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.binary(min_size=1, max_size=12), min_size=1, max_size=5))
def test_arbitrary_bytes_against_oracle(seqs):
    coll = SeqCollection.from_seqs(seqs)
    for name in _backend.available():
        got = ebwt(coll, backend=name)
        want = oracle_ebwt(coll)
        assert (got.bwt, got.index_set) == (want.bwt, want.index_set)


def test_integer_alphabet_conjugate_array(backend):
    seqs = [[5, 1, 5], [70000, 2], [1, 1, 3, 1, 1, 3]]
    pos, doc = conjugate_array(seqs, backend=backend)
    assert len(pos) == 11
    rows = [seqs[d][j:] + seqs[d][:j] for j, d in zip(pos.tolist(), doc.tolist())]
    # 12 >= |S| + |T| symbols of each power settle every comparison
    powered = [tuple((r * 12)[:12]) for r in rows]
    assert powered == sorted(powered)


def test_backends_agree_on_large_input():
    if len(_backend.available()) < 2:
        pytest.skip("compiled backend not built")
    rng = np.random.default_rng(4)
    seqs = [bytes(rng.choice(list(b"ACGT"), 3000).astype(np.uint8)) for _ in range(5)]
    seqs.append(seqs[0][:1500] * 2)
    coll = SeqCollection.from_seqs(seqs)
    a, b = ebwt(coll, backend="python"), ebwt(coll, backend="cython")
    assert (a.bwt, a.index_set) == (b.bwt, b.index_set)


def test_samples_are_run_boundaries(backend):
    res = ebwt(MIXED, samples=True, backend=backend)
    gca = oracle_gca(MIXED)
    bwt = res.bwt
    want = [(i + 1, gca[i]) for i in range(len(bwt))
            if i == 0 or i == len(bwt) - 1 or bwt[i] != bwt[i - 1] or bwt[i] != bwt[i + 1]]
    assert res.samples == want
