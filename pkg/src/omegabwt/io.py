"""FASTA input, on-disk output formats, run-length encoding and inversion.

Output files for a base path ``B`` (all integers little-endian u64):

``B.ebwt``  raw eBWT bytes
``B.I``     1-based index-set positions, one decimal per line
``B.rle``   records of (u8 byte, u64 run length)
``B.ssa``   samples at run heads: (bwt position, text position, doc), 1-based
``B.esa``   same for run tails
"""
from __future__ import annotations

import os
import re
import warnings
from dataclasses import dataclass

import numpy as np

from .strings import EbwtResult, GcaEntry, SeqCollection

_IUPAC_DEGENERATE = b"RYSWKMBDHVU"
_DEGENERATE_TO_N = bytes.maketrans(_IUPAC_DEGENERATE + _IUPAC_DEGENERATE.lower(),
                                   b"N" * (2 * len(_IUPAC_DEGENERATE)))
_RLE_DTYPE = np.dtype([("byte", "u1"), ("length", "<u8")])
_SAMPLE_DTYPE = np.dtype("<u8")


class FastaError(ValueError):
    pass


class InversionError(ValueError):
    pass


# ------------------------------------------------------------------ FASTA

def read_fasta(path, uppercase: bool = True, degenerate_to_n: bool = True,
               max_n_frac: float | None = None) -> SeqCollection:
    """One document per record, in file order.

    ``max_n_frac`` drops (with a warning) records whose fraction of ``N``
    exceeds the threshold, e.g. ``0.95``.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.strip():
        raise FastaError(f"{path}: empty file")
    records: list[tuple[str, bytearray]] = []
    for lineno, line in enumerate(data.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith(b">"):
            name = line[1:].split(maxsplit=1)
            records.append((name[0].decode() if name else f"seq{len(records) + 1}",
                            bytearray()))
        elif not records:
            raise FastaError(f"{path}:{lineno}: sequence data before the first header")
        else:
            records[-1][1].extend(re.sub(rb"\s+", b"", line))
    docs = []
    for name, seq in records:
        if not seq:
            raise FastaError(f"{path}: record {name!r} is empty")
        seq = bytes(seq)
        if degenerate_to_n:
            seq = seq.translate(_DEGENERATE_TO_N)
        if uppercase:
            seq = seq.upper()
        if max_n_frac is not None:
            frac = (seq.count(b"N") + seq.count(b"n")) / len(seq)
            if frac > max_n_frac:
                warnings.warn(f"dropping record {name!r}: {frac:.1%} N exceeds {max_n_frac:.1%}",
                              stacklevel=2)
                continue
        docs.append((name, seq))
    if not docs:
        raise FastaError(f"{path}: no records left after filtering")
    return SeqCollection(docs)


def write_fasta(coll: SeqCollection, path, width: int = 80) -> None:
    with open(path, "wb") as fh:
        for name, seq in coll.docs:
            fh.write(b">" + name.encode() + b"\n")
            for i in range(0, len(seq), width):
                fh.write(seq[i:i + width] + b"\n")


# ------------------------------------------------------------------ RLE

@dataclass
class RleEbwt:
    runs: list[tuple[int, int]]  # (byte, length)

    @property
    def r(self) -> int:
        return len(self.runs)

    @property
    def n(self) -> int:
        return sum(ln for _, ln in self.runs)

    @property
    def ratio(self) -> float:
        return self.n / self.r if self.r else 0.0

    def expand(self) -> bytes:
        return b"".join(bytes((c,)) * ln for c, ln in self.runs)


def _run_bounds(arr: np.ndarray) -> np.ndarray:
    return np.concatenate(([0], np.flatnonzero(arr[1:] != arr[:-1]) + 1, [arr.size]))


def run_length_encode(bwt: bytes) -> RleEbwt:
    arr = np.frombuffer(bytes(bwt), dtype=np.uint8)
    if arr.size == 0:
        return RleEbwt([])
    b = _run_bounds(arr)
    return RleEbwt(list(zip(arr[b[:-1]].tolist(), np.diff(b).tolist())))


# ------------------------------------------------------------------ inversion

def invert_ebwt(result: EbwtResult) -> SeqCollection:
    """Recover the document multiset; documents come out in index-set order.

    The LF permutation (stable sort of the eBWT) splits into one cycle per
    primitive copy. A power ``U^k`` owns ``k`` cycles of length ``|U|``: the
    one through its index row, plus ``k - 1`` index-free cycles whose rows sit
    directly after it.
    """
    L = np.frombuffer(bytes(result.bwt), dtype=np.uint8)
    n = L.size
    starts = [i - 1 for i in result.index_set]
    if n == 0:
        if starts:
            raise InversionError("index set given for an empty eBWT")
        raise InversionError("empty eBWT")
    if not starts:
        raise InversionError("empty index set")
    if any(not 0 <= s < n for s in starts) or len(set(starts)) != len(starts):
        raise InversionError("index set has out-of-range or repeated positions")
    order = np.argsort(L, kind="stable")
    lf = np.empty(n, dtype=np.int64)
    lf[order] = np.arange(n)

    cycle = [-1] * n
    lf_list = lf.tolist()
    ncyc = 0
    for i in range(n):
        if cycle[i] >= 0:
            continue
        j = i
        while cycle[j] < 0:
            cycle[j] = ncyc
            j = lf_list[j]
        if j != i:
            raise InversionError("LF walk re-entered a cycle before closing")
        ncyc += 1
    owner = [-1] * ncyc
    for h, s in enumerate(starts):
        c = cycle[s]
        if owner[c] >= 0:
            raise InversionError(f"index positions {starts[owner[c]] + 1} and {s + 1} "
                                 "lie on the same cycle")
        owner[c] = h

    L_list = L.tolist()

    def walk(start):
        chars = []
        j = start
        while True:
            chars.append(L_list[j])
            j = lf_list[j]
            if j == start:
                return chars

    claimed = [o >= 0 for o in owner]
    docs = []
    for h in sorted(range(len(starts)), key=lambda x: starts[x]):
        s = starts[h]
        chars = walk(s)
        k = 1
        r = s + 1
        # further copies of a power: index-free cycles spelling the same root
        while r < n and not claimed[cycle[r]] and walk(r) == chars:
            claimed[cycle[r]] = True
            k += 1
            r += 1
        docs.append(bytes(reversed(chars)) * k)
    if not all(claimed):
        raise InversionError("cycles left without a document: index set too small")
    return SeqCollection.from_seqs(docs)


# ------------------------------------------------------------------ outputs

def _pack_samples(samples) -> bytes:
    arr = np.array([(i, e.pos, e.doc) for i, e in samples], dtype=_SAMPLE_DTYPE)
    return arr.reshape(-1).tobytes()


def write_outputs(result: EbwtResult, base, rle: bool = False,
                  samples: bool = False) -> list[str]:
    """Write the requested files and return their paths."""
    base = os.fspath(base)
    written = []

    def put(ext, payload):
        path = f"{base}.{ext}"
        with open(path, "wb") as fh:
            fh.write(payload)
        written.append(path)

    put("ebwt", bytes(result.bwt))
    put("I", "".join(f"{i}\n" for i in result.index_set).encode())
    if rle:
        enc = run_length_encode(result.bwt)
        put("rle", np.array(enc.runs, dtype=_RLE_DTYPE).tobytes())
    if samples:
        if result.samples is None:
            raise ValueError("result carries no samples")
        put("ssa", _pack_samples(result.run_heads()))
        put("esa", _pack_samples(result.run_tails()))
    return written


def read_ebwt(base) -> EbwtResult:
    base = os.fspath(base)
    with open(f"{base}.ebwt", "rb") as fh:
        bwt = fh.read()
    with open(f"{base}.I") as fh:
        index_set = [int(x) for x in fh.read().split()]
    return EbwtResult(bwt, index_set)


def read_rle(path) -> RleEbwt:
    with open(path, "rb") as fh:
        arr = np.frombuffer(fh.read(), dtype=_RLE_DTYPE)
    return RleEbwt(list(zip(arr["byte"].tolist(), arr["length"].tolist())))


def read_samples(path) -> list[tuple[int, GcaEntry]]:
    with open(path, "rb") as fh:
        arr = np.frombuffer(fh.read(), dtype=_SAMPLE_DTYPE).reshape(-1, 3)
    return [(int(i), GcaEntry(int(j), int(d))) for i, j, d in arr]
