"""Cyclic prefix-free parsing.

Each document is read as a circular string and cut at trigger windows of
length ``w``: a window is a trigger when its Karp-Rabin hash, reduced mod
``p``, falls in the remainder set (or, in test mode, when it belongs to an
explicit set of strings). Consecutive phrases overlap by ``w`` bytes and the
last phrase of a document wraps around to the first trigger.

Karp-Rabin form: ``h(x) = sum(x[i] * 256**(w-1-i)) mod 1999999973``; the
trigger test uses ``h(x) mod p``.
"""
from __future__ import annotations

import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .. import _backend
from .._pykernels import KR_BASE, KR_PRIME
from ..sais import conjugate_array
from ..strings import SeqCollection


class PfpError(ValueError):
    pass


@dataclass
class TriggerConfig:
    w: int = 10
    p: int = 100
    remainders: frozenset = frozenset({0})
    explicit_triggers: frozenset | None = None

    def __post_init__(self):
        if self.w < 1 or self.p < 1:
            raise ValueError("w and p must be positive")
        self.remainders = frozenset(self.remainders)
        if any(not 0 <= r < self.p for r in self.remainders):
            raise ValueError("remainders must lie in [0, p)")
        if self.explicit_triggers is not None:
            trig = frozenset(t.encode() if isinstance(t, str) else bytes(t)
                             for t in self.explicit_triggers)
            if any(len(t) != self.w for t in trig):
                raise ValueError(f"explicit triggers must have length w={self.w}")
            self.explicit_triggers = trig


@dataclass
class PfpOutput:
    w: int
    dict: list[bytes]
    parses: list[list[int]]  # 1-based phrase ranks
    start_marks: list[tuple[int, int]]  # (parse index, offset), 1-based
    phrase_starts: list[list[int]]  # 1-based text positions
    lengths: list[int] = field(default_factory=list)


class SuffixGroup(NamedTuple):
    suffix: bytes
    members: list[tuple[int, int]]  # (phrase rank, offset), 1-based
    full_phrase: bool


# --------------------------------------------------------------- hashing

def kr_window_hash(window: bytes, p: int) -> int:
    h = 0
    for c in window:
        h = (h * KR_BASE + c) % KR_PRIME
    return h % p


class RollingHash:
    """Karp-Rabin hash over a sliding window of fixed width."""

    def __init__(self, window: bytes):
        self.w = len(window)
        self._top = pow(KR_BASE, self.w - 1, KR_PRIME)
        self.value = 0
        for c in window:
            self.value = (self.value * KR_BASE + c) % KR_PRIME

    def roll(self, out_byte: int, in_byte: int) -> int:
        self.value = ((self.value - out_byte * self._top) * KR_BASE + in_byte) % KR_PRIME
        return self.value


def window_hashes(seq: bytes, w: int, backend: str | None = None) -> np.ndarray:
    kern = _backend.get(backend)
    if len(seq) < w:
        raise PfpError(f"document of length {len(seq)} is shorter than w={w}")
    return np.asarray(kern.kr_cyclic_hashes(seq, w), dtype=np.int64)


def select_remainders(coll: SeqCollection, w: int, p: int,
                      backend: str | None = None) -> frozenset:
    """Grow the remainder set greedily until every document has a trigger."""
    rem = {0}
    for seq in coll.seqs:
        res = window_hashes(seq, w, backend) % p
        if not np.isin(res, list(rem)).any():
            rem.add(int(res[-1]))
    return frozenset(rem)


def trigger_positions(seq: bytes, cfg: TriggerConfig, backend: str | None = None) -> np.ndarray:
    """0-based starts of cyclic trigger windows, ascending."""
    n, w = len(seq), cfg.w
    if n < w:
        raise PfpError(f"document of length {n} is shorter than w={w}")
    if cfg.explicit_triggers is not None:
        ext = seq + seq[:w]
        return np.array([t for t in range(n) if ext[t:t + w] in cfg.explicit_triggers],
                        dtype=np.int64)
    res = window_hashes(seq, w, backend) % cfg.p
    return np.flatnonzero(np.isin(res, sorted(cfg.remainders)))


# --------------------------------------------------------------- parsing

def _split(seq: bytes, cfg: TriggerConfig, backend):
    n, w = len(seq), cfg.w
    t = trigger_positions(seq, cfg, backend)
    if t.size == 0:
        raise PfpError("document has no cyclic trigger window")
    ext = seq + seq + seq[:w]
    ends = np.append(t[1:], t[0] + n) + w
    phrases = [ext[a:b] for a, b in zip(t.tolist(), ends.tolist())]
    # Position 1 is owned by the first phrase if a trigger starts there,
    # otherwise by the wrapping last phrase.
    if t[0] == 0:
        mark = (1, 1)
    else:
        mark = (len(phrases), n - int(t[-1]) + 1)
    return phrases, mark, (t + 1).tolist()


def parse_collection(coll: SeqCollection, cfg: TriggerConfig, threads: int = 1,
                     backend: str | None = None) -> PfpOutput:
    seqs = coll.seqs
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            pieces = list(pool.map(lambda s: _split(s, cfg, backend), seqs))
    else:
        pieces = [_split(s, cfg, backend) for s in seqs]
    dictionary = sorted({ph for phrases, _, _ in pieces for ph in phrases})
    rank = {ph: r for r, ph in enumerate(dictionary, start=1)}
    return PfpOutput(
        w=cfg.w,
        dict=dictionary,
        parses=[[rank[ph] for ph in phrases] for phrases, _, _ in pieces],
        start_marks=[mark for _, mark, _ in pieces],
        phrase_starts=[starts for _, _, starts in pieces],
        lengths=[len(s) for s in seqs],
    )


def deparse(out: PfpOutput) -> list[bytes]:
    """Rebuild every document from its phrases, undoing the w-byte overlaps."""
    w = out.w
    docs = []
    for parse, n, starts in zip(out.parses, out.lengths, out.phrase_starts):
        body = b"".join(out.dict[r - 1][:-w] for r in parse)
        shift = starts[0] - 1  # body begins at the first trigger
        docs.append((body[n - shift:] + body[:n - shift])[:n] if shift else body)
    return docs


# --------------------------------------------------------------- suffixes

def sorted_suffixes(dictionary: Sequence[bytes], w: int, backend: str | None = None):
    """Lexicographically sorted dictionary suffixes longer than ``w``.

    Returns 0-based arrays ``(phrase, offset, bounds)``; entries between
    ``bounds[g]`` and ``bounds[g+1]`` spell the same suffix. The order comes
    from the conjugate array of the phrases read as circular strings: the
    kept suffixes are prefix-free, so their comparisons are settled before
    any wrap-around.
    """
    if not dictionary:
        z = np.zeros(0, np.int64)
        return z, z, np.zeros(1, np.int64)
    pos, doc = conjugate_array(list(dictionary), 256, backend=backend)
    plen = np.array([len(d) for d in dictionary], dtype=np.int64)
    keep = plen[doc] - pos > w
    pos, doc = pos[keep], doc[keep]
    kern = _backend.get(backend)
    dict_bytes = b"".join(dictionary)
    dict_off = np.zeros(len(dictionary), dtype=np.int64)
    np.cumsum(plen[:-1], out=dict_off[1:])
    bounds = np.asarray(kern.suffix_group_bounds(dict_bytes, dict_off, plen, doc, pos),
                        dtype=np.int64)
    return doc, pos, bounds


def suffix_set(dictionary: Sequence[bytes], w: int) -> list[SuffixGroup]:
    phrase, offset, bounds = sorted_suffixes(dictionary, w)
    groups = []
    for lo, hi in zip(bounds[:-1].tolist(), bounds[1:].tolist()):
        d0, k0 = int(phrase[lo]), int(offset[lo])
        members = [(int(phrase[i]) + 1, int(offset[i]) + 1) for i in range(lo, hi)]
        groups.append(SuffixGroup(dictionary[d0][k0:], members, k0 == 0))
    return groups


# --------------------------------------------------------------- dump format
#
# <base>.dict   per phrase: u64 length, then the phrase bytes (sorted order)
# <base>.parse  per document: u64 parse length, then u32 ranks (1-based)
# <base>.starts per document: u64 doc, u64 parse index, u64 offset (1-based)
# All integers little-endian.

def write_parse(out: PfpOutput, base: str) -> None:
    with open(f"{base}.dict", "wb") as fh:
        for ph in out.dict:
            fh.write(struct.pack("<Q", len(ph)))
            fh.write(ph)
    with open(f"{base}.parse", "wb") as fh:
        for parse in out.parses:
            fh.write(struct.pack("<Q", len(parse)))
            fh.write(np.asarray(parse, dtype="<u4").tobytes())
    with open(f"{base}.starts", "wb") as fh:
        for h, (i, k) in enumerate(out.start_marks, start=1):
            fh.write(struct.pack("<QQQ", h, i, k))


def read_parse(base: str) -> tuple[list[bytes], list[list[int]], list[tuple[int, int]]]:
    dictionary = []
    with open(f"{base}.dict", "rb") as fh:
        data = fh.read()
    at = 0
    while at < len(data):
        (ln,) = struct.unpack_from("<Q", data, at)
        dictionary.append(data[at + 8:at + 8 + ln])
        at += 8 + ln
    parses = []
    with open(f"{base}.parse", "rb") as fh:
        data = fh.read()
    at = 0
    while at < len(data):
        (ln,) = struct.unpack_from("<Q", data, at)
        parses.append(np.frombuffer(data, dtype="<u4", count=ln, offset=at + 8).tolist())
        at += 8 + 4 * ln
    with open(f"{base}.starts", "rb") as fh:
        raw = np.frombuffer(fh.read(), dtype="<u8").reshape(-1, 3)
    marks = [(int(i), int(k)) for _, i, k in raw]
    return dictionary, parses, marks
