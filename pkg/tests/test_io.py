import random
import struct

import pytest
from hypothesis import given, settings, strategies as st

from gen import random_collection
from omegabwt.io import (FastaError, InversionError, RleEbwt, invert_ebwt, read_ebwt,
                         read_fasta, read_rle, read_samples, run_length_encode, write_fasta,
                         write_outputs)
from omegabwt.sais import ebwt
from omegabwt.strings import EbwtResult, SeqCollection


def fasta(tmp_path, text, name="in.fa"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_read_two_records(tmp_path):
    coll = read_fasta(fasta(tmp_path, ">a desc\nGTACAACG\n>b\nCGGCAC\nACACGT\n"))
    assert coll.docs == [("a", b"GTACAACG"), ("b", b"CGGCACACACGT")]


def test_normalisation(tmp_path):
    path = fasta(tmp_path, ">x\nacgRt\n")
    assert read_fasta(path).seqs == [b"ACGNT"]
    assert read_fasta(path, uppercase=False, degenerate_to_n=False).seqs == [b"acgRt"]


def test_n_filter_warns_and_drops(tmp_path):
    path = fasta(tmp_path, ">keep\nACGT\n>drop\nNNNNNNNNNN\n")
    with pytest.warns(UserWarning, match="drop"):
        coll = read_fasta(path, max_n_frac=0.95)
    assert [name for name, _ in coll.docs] == ["keep"]
    assert read_fasta(path).m == 2


@pytest.mark.parametrize("text", ["", "\n\n", ">a\n>b\nAC\n", "ACGT\n>a\nAC\n", ">only\n"])
def test_bad_fasta(tmp_path, text):
    with pytest.raises(FastaError):
        read_fasta(fasta(tmp_path, text))


def test_fasta_round_trip(tmp_path):
    coll = SeqCollection.from_seqs([b"A" * 170, b"CG"])
    write_fasta(coll, tmp_path / "o.fa")
    assert read_fasta(tmp_path / "o.fa").docs == coll.docs


@pytest.mark.parametrize("bwt,runs", [
    (b"TATTAAA", [(84, 1), (65, 1), (84, 2), (65, 3)]),
    (b"nnbaaa", [(110, 2), (98, 1), (97, 3)]),
    (b"", []),
])
def test_rle(bwt, runs):
    enc = run_length_encode(bwt)
    assert enc.runs == runs and enc.n == len(bwt) and enc.r == len(runs)
    assert enc.expand() == bwt


def test_rle_ratio():
    assert run_length_encode(b"TATTAAA").ratio == pytest.approx(1.75)
    assert RleEbwt([]).ratio == 0.0


@pytest.mark.parametrize("bwt,index,docs", [
    (b"CTCCACAGAACTAAGCCGCGG", [11, 12, 18], [b"C", b"CGGCACACACGT", b"GTACAACG"]),
    (b"TATTAAA", [2, 6, 7], [b"ATA", b"TA", b"TA"]),
    (b"TATTAAA", [2, 6], [b"ATA", b"TATA"]),
])
def test_invert_examples(bwt, index, docs):
    assert sorted(invert_ebwt(EbwtResult(bwt, index)).seqs) == docs


def test_invert_round_trip_random():
    rng = random.Random(13)
    for _ in range(1000):
        seqs = random_collection(rng, max_len=24)
        got = invert_ebwt(ebwt(SeqCollection.from_seqs(seqs))).seqs
        assert sorted(got) == sorted(seqs)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.binary(min_size=1, max_size=10), min_size=1, max_size=5))
def test_invert_round_trip_bytes(seqs):
    got = invert_ebwt(ebwt(SeqCollection.from_seqs(seqs))).seqs
    assert sorted(got) == sorted(seqs)


@pytest.mark.parametrize("index", [[], [11, 12], [11, 12, 18, 19], [0], [11, 11, 18]])
def test_invert_inconsistent(index):
    with pytest.raises(InversionError):
        invert_ebwt(EbwtResult(b"CTCCACAGAACTAAGCCGCGG", index))


def test_invert_empty():
    with pytest.raises(InversionError):
        invert_ebwt(EbwtResult(b"", []))


def test_write_outputs_default(tmp_path):
    res = ebwt(SeqCollection.from_seqs([b"GTACAACG", b"CGGCACACACGT", b"C"]))
    files = write_outputs(res, tmp_path / "ex")
    assert sorted(p.name for p in tmp_path.iterdir()) == ["ex.I", "ex.ebwt"]
    assert len(files) == 2
    assert (tmp_path / "ex.ebwt").read_bytes() == b"CTCCACAGAACTAAGCCGCGG"
    assert (tmp_path / "ex.I").read_text() == "11\n12\n18\n"
    assert read_ebwt(tmp_path / "ex") == res


def test_write_rle_and_samples(tmp_path):
    res = ebwt(SeqCollection.from_seqs([b"ATA", b"TA", b"TA"]), samples=True)
    write_outputs(res, tmp_path / "t", rle=True, samples=True)
    raw = (tmp_path / "t.rle").read_bytes()
    assert len(raw) == 4 * 9
    assert struct.unpack_from("<BQ", raw, 0) == (ord("T"), 1)
    assert read_rle(tmp_path / "t.rle") == run_length_encode(b"TATTAAA")
    assert read_samples(tmp_path / "t.ssa") == res.run_heads()
    assert read_samples(tmp_path / "t.esa") == res.run_tails()
    first = struct.unpack_from("<QQQ", (tmp_path / "t.ssa").read_bytes(), 0)
    assert first == (1, res.samples[0][1].pos, res.samples[0][1].doc)


def test_samples_requested_without_data(tmp_path):
    with pytest.raises(ValueError):
        write_outputs(EbwtResult(b"A", [1]), tmp_path / "z", samples=True)
